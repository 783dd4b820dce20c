#!/usr/bin/env python3
"""Write deterministic toy word vectors for the bundled vocabulary.

Each word is a topic prototype plus noise. Person words share one direction,
so captions about the same person stay close to the whole text, while
captions about different topics (clothing, hair, desk work) stay apart.
Function words get short vectors so they barely move a sentence mean.

usage: gen_toy_vectors.py LEXICON WORDNET_INDEX OUT [--dim 48] [--seed 11]
"""

import argparse

import numpy as np

TOPICS = {
    "person": """man men woman women person people individual someone somebody guy boy girl child children kid kids
        baby lady gentleman officer policeman player speaker worker student teacher doctor friend adult teenager
        mortal soul hombre bozo male female""",
    "clothing": """shirt jacket coat tie necktie hat cap dress suit sweater shoe shoes pants jeans scarf uniform
        collar sleeve button wearing wears wear worn black white red blue green yellow brown striped plaid
        casual formal""",
    "hair": """hair beard mustache moustache short long curly straight bald dark gray grey whiskers""",
    "face": """face smile smiles smiling grin happy sad angry surprised neutral fearful disgusted calm serious
        laughing camera eye eyes mouth teeth glasses sunglasses spectacles looking looks look""",
    "work": """office desk table chair computer laptop screen keyboard monitor sitting sits sit typing working
        paper book books shelf cup coffee mug lamp room""",
    "speech": """microphone mike headphones talking talks talk speaking speaks speak presenting presents present
        webinar audience meeting stage video audio holding holds hold listening pointing""",
    "age": """middleaged old young elderly adult_adj grownup teen""",
    "scene": """sky window wall walls wallpaper door floor ceiling light plant tree trees corner building street
        car road grass field cloud clouds sun park bench bus board whiteboard poster curtain curtains blinds tile
        wood brick kitchen bed outside background picture frame sign water bottle""",
    "body": """arm arms hand hands head neck shoulder finger fingers ear ears nose""",
    "animal": """dog cat ball animal""",
}

# Prototype norm for each topic. Age words are stronger so that an age
# template sentence survives the relevance check.
STRENGTH = {"person": 1.0, "clothing": 1.0, "hair": 1.0, "face": 1.0, "work": 1.0, "speech": 1.0,
            "age": 1.6, "scene": 1.0, "body": 1.0, "animal": 1.0}
NOISE = 0.5
FUNCTION_NORM = 0.05


def vocabulary(lexicon_path, index_path):
    words = set()
    with open(lexicon_path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            words.add(line.split("\t")[0].lower())
    with open(index_path, encoding="utf-8") as f:
        for line in f:
            if line.startswith(" "):
                continue
            lemma = line.split(" ", 1)[0]
            if "_" not in lemma:
                words.add(lemma.lower())
    for topic in TOPICS.values():
        words.update(w for w in topic.split() if "_" not in w)
    return sorted(words)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("lexicon")
    ap.add_argument("wordnet_index")
    ap.add_argument("out")
    ap.add_argument("--dim", type=int, default=48)
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    names = list(TOPICS)
    # Orthonormal prototypes, one per topic.
    basis, _ = np.linalg.qr(rng.standard_normal((args.dim, len(names))))
    proto = {name: basis[:, i] * STRENGTH[name] for i, name in enumerate(names)}
    topic_of = {}
    for name, words in TOPICS.items():
        for w in words.split():
            topic_of.setdefault(w, name)

    with open(args.out, "w", encoding="utf-8", newline="\n") as out:
        for word in vocabulary(args.lexicon, args.wordnet_index):
            noise = rng.standard_normal(args.dim)
            noise /= np.linalg.norm(noise)
            if word in topic_of:
                vec = proto[topic_of[word]] + NOISE * noise
            else:
                vec = FUNCTION_NORM * noise
            out.write(word + " " + " ".join(f"{x:.6f}" for x in vec) + "\n")


if __name__ == "__main__":
    main()
