#!/usr/bin/env python3
"""Write a small noun hierarchy in WordNet grind format (data.noun, index.noun).

The synsets mirror the shape of WordNet 3.0 around person, clothing, body
parts and indoor scenes. Offsets are byte offsets into the generated file,
so they differ from real WordNet.

usage: gen_wordnet_subset.py OUTDIR
"""

import sys
from pathlib import Path

# key: (lex_filenum, lemmas, hypernym keys, gloss)
SYNSETS = {
    "entity": (3, ["entity"], [], "that which is perceived or known to have its own distinct existence"),
    "physical_entity": (3, ["physical_entity"], ["entity"], "an entity that has physical existence"),
    "abstraction": (3, ["abstraction", "abstract_entity"], ["entity"], "a general concept"),
    "object": (3, ["object", "physical_object"], ["physical_entity"], "a tangible and visible entity"),
    "whole": (3, ["whole", "unit"], ["object"], "an assemblage of parts regarded as a single entity"),
    "living_thing": (3, ["living_thing", "animate_thing"], ["whole"], "a living entity"),
    "organism": (3, ["organism", "being"], ["living_thing"], "a living thing that can act independently"),
    "causal_agent": (3, ["causal_agent", "cause", "causal_agency"], ["physical_entity"], "any entity that produces an effect"),
    "person": (18, ["person", "individual", "someone", "somebody", "mortal", "soul"], ["organism", "causal_agent"],
               "a human being"),
    "adult": (18, ["adult", "grownup"], ["person"], "a fully developed person"),
    "male": (18, ["male", "male_person"], ["person"], "a person who belongs to the sex that cannot have babies"),
    "female": (18, ["female", "female_person"], ["person"], "a person who belongs to the sex that can have babies"),
    "man": (18, ["man", "adult_male"], ["adult", "male"], "an adult person who is male"),
    "woman": (18, ["woman", "adult_female"], ["adult", "female"], "an adult female person"),
    "juvenile": (18, ["juvenile", "juvenile_person"], ["person"], "a young person"),
    "child": (18, ["child", "kid", "youngster", "minor", "shaver", "nipper", "tyke"], ["juvenile"],
              "a young person of either sex"),
    "boy": (18, ["boy", "male_child"], ["male"], "a youthful male person"),
    "girl": (18, ["girl", "female_child", "little_girl"], ["female"], "a youthful female person"),
    "baby": (18, ["baby", "babe", "infant"], ["child"], "a very young child"),
    "teenager": (18, ["teenager", "adolescent", "teen"], ["juvenile"], "a juvenile between 13 and 19"),
    "guy": (18, ["guy", "cat", "hombre", "bozo"], ["man"], "an informal term for a youth or man"),
    "gentleman": (18, ["gentleman"], ["man"], "a man of refinement"),
    "lady": (18, ["lady"], ["woman"], "a polite name for any woman"),
    "worker": (18, ["worker"], ["person"], "a person who works at a specific occupation"),
    "employee": (18, ["employee"], ["worker"], "a worker who is hired to perform a job"),
    "professional": (18, ["professional", "professional_person"], ["adult"], "a person engaged in a learned profession"),
    "teacher": (18, ["teacher", "instructor"], ["professional"], "a person whose occupation is teaching"),
    "doctor": (18, ["doctor", "doc", "physician", "medico"], ["professional"], "a licensed medical practitioner"),
    "student": (18, ["student", "pupil", "educatee"], ["person"], "a learner who is enrolled in an institution"),
    "preserver": (18, ["preserver"], ["person"], "someone who keeps safe from harm"),
    "lawman": (18, ["lawman", "law_officer", "peace_officer"], ["preserver"], "an officer of the law"),
    "officer": (18, ["officer", "policeman", "police_officer"], ["lawman"], "a member of a police force"),
    "communicator": (18, ["communicator"], ["person"], "a person who communicates with others"),
    "speaker": (18, ["speaker", "talker", "utterer", "verbalizer"], ["communicator"], "someone who expresses in language"),
    "contestant": (18, ["contestant"], ["person"], "a person who participates in competitions"),
    "player": (18, ["player", "participant"], ["contestant"], "a person who participates in a game"),
    "friend": (18, ["friend"], ["person"], "a person you know well and regard with affection"),
    "people": (14, ["people"], ["group"], "any group of human beings collectively"),
    "group": (3, ["group", "grouping"], ["abstraction"], "any number of entities considered as a unit"),
    "audience": (14, ["audience"], ["group"], "a gathering of spectators or listeners"),
    "gathering": (14, ["gathering", "assemblage"], ["group"], "a group of persons together in one place"),
    "meeting": (14, ["meeting", "group_meeting"], ["gathering"], "a formally arranged gathering"),
    "webinar": (14, ["webinar"], ["meeting"], "a seminar conducted over the internet"),
    "body_human": (8, ["human_body", "physical_body", "flesh"], ["whole"], "alternative names for the body of a human being"),
    "grammatical_person": (10, ["person", "grammatical_person"], ["abstraction"],
                           "a grammatical category of pronouns and verb forms"),
    "artifact": (6, ["artifact", "artefact"], ["whole"], "a man-made object"),
    "covering": (6, ["covering"], ["artifact"], "an artifact that covers something else"),
    "clothing": (6, ["clothing", "article_of_clothing", "vesture", "wear"], ["covering"], "a covering worn on the body"),
    "garment": (6, ["garment"], ["clothing"], "an article of clothing"),
    "shirt": (6, ["shirt"], ["garment"], "a garment worn on the upper half of the body"),
    "jacket": (6, ["jacket"], ["garment"], "a short coat"),
    "coat": (6, ["coat"], ["garment"], "an outer garment with sleeves"),
    "dress": (6, ["dress", "frock"], ["garment"], "a one-piece garment for a woman"),
    "sweater": (6, ["sweater", "jumper"], ["garment"], "a crocheted or knitted garment"),
    "tie": (6, ["necktie", "tie"], ["garment"], "neckwear consisting of a long narrow piece of material"),
    "hat": (6, ["hat", "chapeau", "lid"], ["clothing"], "headdress that protects the head"),
    "cap": (6, ["cap"], ["hat"], "a tight-fitting headwear"),
    "instrumentality": (6, ["instrumentality", "instrumentation"], ["artifact"], "an artifact that is instrumental"),
    "device": (6, ["device"], ["instrumentality"], "an instrumentality invented for a particular purpose"),
    "microphone": (6, ["microphone", "mike"], ["device"], "device for converting sound waves into electrical energy"),
    "glasses": (6, ["glasses", "spectacles", "specs", "eyeglasses"], ["device"], "optical instrument worn over the eyes"),
    "computer": (6, ["computer", "computing_machine"], ["device"], "a machine for performing calculations"),
    "laptop": (6, ["laptop", "laptop_computer"], ["computer"], "a portable computer"),
    "camera": (6, ["camera", "photographic_camera"], ["device"], "equipment for taking photographs"),
    "screen": (6, ["screen", "display", "monitor"], ["device"], "a display on which images appear"),
    "lamp": (6, ["lamp"], ["device"], "an artificial source of visible illumination"),
    "furniture": (6, ["furniture", "piece_of_furniture"], ["instrumentality"], "furnishings that make a room ready"),
    "desk": (6, ["desk"], ["furniture"], "a piece of furniture with a writing surface"),
    "table": (6, ["table"], ["furniture"], "a piece of furniture with a smooth flat top"),
    "chair": (6, ["chair"], ["furniture"], "a seat for one person"),
    "shelf": (6, ["shelf"], ["furniture"], "a support for objects"),
    "container": (6, ["container"], ["instrumentality"], "any object that can hold things"),
    "cup": (6, ["cup", "mug"], ["container"], "a small open container for drinking"),
    "bag": (6, ["bag"], ["container"], "a flexible container"),
    "structure": (6, ["structure", "construction"], ["artifact"], "a thing constructed"),
    "wall": (6, ["wall"], ["structure"], "an architectural partition"),
    "window": (6, ["window"], ["structure"], "a framework of wood or metal that contains a glass windowpane"),
    "door": (6, ["door"], ["structure"], "a swinging or sliding barrier"),
    "ceiling": (6, ["ceiling"], ["structure"], "the overhead upper surface of a room"),
    "floor": (6, ["floor", "flooring"], ["structure"], "the inside lower horizontal surface"),
    "room": (6, ["room"], ["structure"], "an area within a building enclosed by walls"),
    "office": (6, ["office", "business_office"], ["room"], "a place of business where professional duties are done"),
    "kitchen": (6, ["kitchen"], ["room"], "a room equipped for preparing meals"),
    "building": (6, ["building", "edifice"], ["structure"], "a structure with a roof and walls"),
    "book": (6, ["book", "volume"], ["artifact"], "a written work bound between covers"),
    "chess_piece": (6, ["chessman", "chess_piece", "man"], ["artifact"], "any of 16 white and 16 black pieces in chess"),
    "body_part": (8, ["body_part"], ["physical_entity"], "any part of an organism"),
    "hair": (8, ["hair"], ["body_part"], "a covering for the body that consists of a dense growth of threadlike structures"),
    "beard": (8, ["beard", "face_fungus", "whiskers"], ["hair"], "the hair growing on the lower part of a man's face"),
    "mustache": (8, ["mustache", "moustache"], ["hair"], "an unshaved growth of hair on the upper lip"),
    "face": (8, ["face", "human_face"], ["body_part"], "the front of the human head"),
    "head": (8, ["head", "caput"], ["body_part"], "the upper part of the human body"),
    "arm": (8, ["arm"], ["body_part"], "a human limb"),
    "hand": (8, ["hand", "manus", "mitt", "paw"], ["body_part"], "the extremity of the superior limb"),
    "eye": (8, ["eye", "oculus", "optic"], ["body_part"], "the organ of sight"),
    "mouth": (8, ["mouth"], ["body_part"], "the opening through which food is taken in"),
    "smile": (10, ["smile", "smiling", "grin", "grinning"], ["abstraction"], "a facial expression of amusement"),
    "sky": (17, ["sky"], ["physical_entity"], "the atmosphere and outer space as viewed from the earth"),
    "cloud": (17, ["cloud"], ["physical_entity"], "a visible mass of water droplets suspended in the air"),
    "light": (11, ["light", "visible_light"], ["physical_entity"], "electromagnetic radiation that can produce a visual sensation"),
    "plant": (20, ["plant", "flora", "plant_life"], ["organism"], "a living organism lacking the power of locomotion"),
    "tree": (20, ["tree"], ["plant"], "a tall perennial woody plant"),
    "animal": (5, ["animal", "animate_being", "beast", "brute", "creature", "fauna"], ["organism"],
               "a living organism characterized by voluntary movement"),
    "dog": (5, ["dog", "domestic_dog"], ["animal"], "a member of the genus Canis"),
    "beverage": (13, ["beverage", "drink"], ["physical_entity"], "any liquid suitable for drinking"),
    "coffee": (13, ["coffee", "java"], ["beverage"], "a beverage made by percolating water through roasted coffee beans"),
    "paper": (27, ["paper"], ["physical_entity"], "a material made of cellulose pulp"),
    "corner": (15, ["corner", "nook"], ["physical_entity"], "an interior angle formed by two meeting walls"),
    "street": (6, ["street"], ["structure"], "a thoroughfare in a city"),
    "car": (6, ["car", "auto", "automobile", "machine", "motorcar"], ["instrumentality"], "a motor vehicle"),
}


HEADER = "  1 This file is a generated subset shaped like the WordNet 3.0 noun database.  \n"


def render(key: str, offsets: dict) -> str:
    lex, lemmas, hypers, gloss = SYNSETS[key]
    words = " ".join(f"{w} 0" for w in lemmas)
    ptrs = "".join(f" @ {offsets[h]:08d} n 0000" for h in hypers)
    return f"{offsets[key]:08d} {lex:02d} n {len(lemmas):02x} {words} {len(hypers):03d}{ptrs} | {gloss}  \n"


def build(outdir: Path) -> None:
    keys = list(SYNSETS)
    # Every offset prints as 8 digits, so line lengths do not depend on the
    # offset values and one layout pass is enough.
    offsets = dict.fromkeys(keys, 0)
    pos = len(HEADER.encode())
    for key in keys:
        offsets[key] = pos
        pos += len(render(key, offsets).encode())

    with open(outdir / "data.noun", "w", encoding="utf-8", newline="\n") as out:
        out.write(HEADER)
        for key in keys:
            out.write(render(key, offsets))

    senses = {}
    for key in keys:
        for lemma in SYNSETS[key][1]:
            senses.setdefault(lemma.lower(), []).append(offsets[key])
    with open(outdir / "index.noun", "w", encoding="utf-8", newline="\n") as out:
        out.write(HEADER)
        for lemma in sorted(senses):
            ids = " ".join(f"{o:08d}" for o in senses[lemma])
            n = len(senses[lemma])
            out.write(f"{lemma} n {n} 1 @ {n} 0 {ids}  \n")


def main() -> None:
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    outdir = Path(sys.argv[1])
    outdir.mkdir(parents=True, exist_ok=True)
    build(outdir)


if __name__ == "__main__":
    main()
