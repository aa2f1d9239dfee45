#!/usr/bin/env python3
"""Regenerates the synthetic AskCQ-shaped fixtures under fixtures/.

The fixture mirrors the reference per-set marginals (set sizes, comment,
ambiguity and relevance proportions, suitability score histograms) but the
question texts, parses, primitives and embeddings are template-generated.
Parses are correct by construction because every template carries its own
token-level POS/dependency annotation.

Usage: python3 tools/make_fixtures.py [out_dir]
"""

import json
import random
import sys
from pathlib import Path

import numpy as np

SEED = 46

# score histogram per set: (n(+3), n(+1), n(-1), n(-3))
SETS = [
    # id, n, histogram, commented, ambiguous, relevance-3 count, relevance-blank count
    ("HA-1", 44, (35, 5, 4, 0), 12, 9, 8, 0),
    ("HA-2", 54, (52, 1, 1, 0), 10, 2, 15, 0),
    ("Pattern", 38, (9, 10, 12, 7), 14, 5, 5, 1),
    ("GPT", 26, (15, 7, 4, 0), 9, 1, 3, 1),
    ("Gemini", 42, (25, 3, 14, 0), 13, 6, 2, 0),
]

TEMPLATES_FOR_SET = {
    "HA-1": ["attr_of", "passive_by", "how_many", "is_adj", "who_did"],
    "HA-2": ["attr_of", "passive_by", "how_many", "who_did", "relcl"],
    "Pattern": ["attr_of", "relcl", "is_adj", "how_many"],
    "GPT": ["loan_window", "record_whether", "associated_with"],
    "Gemini": ["associated_with", "record_whether", "loan_window", "passive_by"],
}

NOUNS = [
    ("instrument", "instruments"), ("guitar", "guitars"), ("violin", "violins"),
    ("piano", "pianos"), ("manuscript", "manuscripts"), ("recording", "recordings"),
    ("score", "scores"), ("photograph", "photographs"), ("poster", "posters"),
    ("drum", "drums"), ("flute", "flutes"), ("harp", "harps"),
    ("costume", "costumes"), ("artefact", "artefacts"), ("exhibit", "exhibits"),
    ("item", "items"), ("trumpet", "trumpets"), ("letter", "letters"),
]
ATTRS = [
    "family", "maker", "material", "format", "origin", "condition", "value",
    "provenance", "weight", "colour", "label", "title", "genre", "location", "owner",
]
VERBS_ED = [
    "loaned", "donated", "restored", "digitised", "catalogued", "played",
    "acquired", "borrowed", "exhibited", "repaired", "recorded", "photographed",
]
AGENTS = ["curator", "collector", "musician", "conservator", "library", "archivist", "visitor"]
PLACES = ["collection", "archive", "gallery", "exhibition", "museum", "storeroom", "catalogue"]
ADJS = ["available", "fragile", "insured", "damaged", "authentic", "complete", "valuable"]
PARTNERS = ["partners", "museums", "institutions", "collectors", "schools", "festivals"]
VERBS_S = ["features", "accompanies", "depicts", "mentions", "contains", "describes"]
YEARS = [("1990", "2000"), ("1950", "1970"), ("1900", "1920"), ("2001", "2011"), ("1980", "1995")]
NUMBERS = ["two", "five", "ten", "twenty", "fifty"]


def cap(w):
    return w[:1].upper() + w[1:]


def camel(*parts):
    return parts[0] + "".join(cap(p) for p in parts[1:])


def tok(surface, pos, dep, head):
    return {"surface": surface, "pos": pos, "dep": dep, "head": head}


def article(word):
    return "an" if word[0] in "aeiou" else "a"


def t_attr_of(r):
    attr = r.choice(ATTRS)
    noun, _ = r.choice(NOUNS)
    art = article(noun)
    text = f"What is the {attr} of {art} {noun}?"
    tokens = [
        tok("What", "PRON", "attr", 1), tok("is", "AUX", "ROOT", 1),
        tok("the", "DET", "det", 3), tok(attr, "NOUN", "nsubj", 1),
        tok("of", "ADP", "prep", 3), tok(art, "DET", "det", 6),
        tok(noun, "NOUN", "pobj", 4), tok("?", "PUNCT", "punct", 1),
    ]
    prim = dict(concepts=[cap(noun)], properties=[attr], relationships=[], filters=[],
                cardinality="SINGLE", aggregation=False)
    return text, tokens, 3, "WH", prim


def t_passive_by(r):
    _, nouns = r.choice(NOUNS)
    verb = r.choice(VERBS_ED)
    agent = r.choice(AGENTS)
    text = f"Which {nouns} were {verb} by the {agent}?"
    tokens = [
        tok("Which", "DET", "det", 1), tok(nouns, "NOUN", "nsubjpass", 3),
        tok("were", "AUX", "auxpass", 3), tok(verb, "VERB", "ROOT", 3),
        tok("by", "ADP", "agent", 3), tok("the", "DET", "det", 6),
        tok(agent, "NOUN", "pobj", 4), tok("?", "PUNCT", "punct", 3),
    ]
    prim = dict(concepts=[cap(nouns[:-1]), cap(agent)], properties=[],
                relationships=[camel(verb, "by")], filters=[],
                cardinality="MULTIPLE", aggregation=False)
    return text, tokens, 2, "WH", prim


def t_how_many(r):
    _, nouns = r.choice(NOUNS)
    place = r.choice(PLACES)
    text = f"How many {nouns} are in the {place}?"
    tokens = [
        tok("How", "ADV", "advmod", 1), tok("many", "ADJ", "amod", 2),
        tok(nouns, "NOUN", "nsubj", 3), tok("are", "AUX", "ROOT", 3),
        tok("in", "ADP", "prep", 3), tok("the", "DET", "det", 6),
        tok(place, "NOUN", "pobj", 4), tok("?", "PUNCT", "punct", 3),
    ]
    prim = dict(concepts=[cap(nouns[:-1]), cap(place)], properties=[],
                relationships=["isPartOf"], filters=[],
                cardinality="MULTIPLE", aggregation=True)
    return text, tokens, 2, "AGGREGATION", prim


def t_is_adj(r):
    noun, _ = r.choice(NOUNS)
    adj = r.choice(ADJS)
    text = f"Is the {noun} {adj}?"
    tokens = [
        tok("Is", "AUX", "ROOT", 0), tok("the", "DET", "det", 2),
        tok(noun, "NOUN", "nsubj", 0), tok(adj, "ADJ", "acomp", 0),
        tok("?", "PUNCT", "punct", 0),
    ]
    prim = dict(concepts=[cap(noun)], properties=[adj], relationships=[], filters=[],
                cardinality="EXISTENCE", aggregation=False)
    return text, tokens, 1, "BOOLEAN", prim


def t_who_did(r):
    verb = r.choice(VERBS_ED)
    noun, _ = r.choice(NOUNS)
    text = f"Who {verb} the {noun}?"
    tokens = [
        tok("Who", "PRON", "nsubj", 1), tok(verb, "VERB", "ROOT", 1),
        tok("the", "DET", "det", 3), tok(noun, "NOUN", "dobj", 1),
        tok("?", "PUNCT", "punct", 1),
    ]
    prim = dict(concepts=["Person", cap(noun)], properties=[], relationships=[verb],
                filters=[], cardinality="SINGLE", aggregation=False)
    return text, tokens, 2, "WH", prim


def t_relcl(r):
    attr = r.choice(ATTRS)
    noun, _ = r.choice(NOUNS)
    verb = r.choice(VERBS_S)
    noun2, _ = r.choice([n for n in NOUNS if n[0] != noun])
    text = f"What is the {attr} of the {noun} that {verb} the {noun2}?"
    tokens = [
        tok("What", "PRON", "attr", 1), tok("is", "AUX", "ROOT", 1),
        tok("the", "DET", "det", 3), tok(attr, "NOUN", "nsubj", 1),
        tok("of", "ADP", "prep", 3), tok("the", "DET", "det", 6),
        tok(noun, "NOUN", "pobj", 4), tok("that", "PRON", "nsubj", 8),
        tok(verb, "VERB", "relcl", 6), tok("the", "DET", "det", 10),
        tok(noun2, "NOUN", "dobj", 8), tok("?", "PUNCT", "punct", 1),
    ]
    prim = dict(concepts=[cap(noun), cap(noun2)], properties=[attr],
                relationships=[verb], filters=[], cardinality="SINGLE", aggregation=False)
    return text, tokens, 5, "WH", prim


def t_loan_window(r):
    _, nouns = r.choice(NOUNS)
    noun = nouns[:-1]
    place = r.choice(PLACES)
    verb = r.choice(VERBS_ED)
    partners = r.choice(PARTNERS)
    y1, y2 = r.choice(YEARS)
    attr = r.choice(ATTRS)
    text = (f"Which {nouns} in the {place} were {verb} to external {partners} "
            f"between {y1} and {y2}, and what {attr} was recorded for each {noun}?")
    tokens = [
        tok("Which", "DET", "det", 1), tok(nouns, "NOUN", "nsubjpass", 6),
        tok("in", "ADP", "prep", 1), tok("the", "DET", "det", 4),
        tok(place, "NOUN", "pobj", 2), tok("were", "AUX", "auxpass", 6),
        tok(verb, "VERB", "ROOT", 6), tok("to", "ADP", "prep", 6),
        tok("external", "ADJ", "amod", 9), tok(partners, "NOUN", "pobj", 7),
        tok("between", "ADP", "prep", 6), tok(y1, "NUM", "pobj", 10),
        tok("and", "CCONJ", "cc", 11), tok(y2, "NUM", "conj", 11),
        tok(",", "PUNCT", "punct", 6), tok("and", "CCONJ", "cc", 6),
        tok("what", "DET", "det", 17), tok(attr, "NOUN", "nsubjpass", 19),
        tok("was", "AUX", "auxpass", 19), tok("recorded", "VERB", "conj", 6),
        tok("for", "ADP", "prep", 19), tok("each", "DET", "det", 22),
        tok(noun, "NOUN", "pobj", 20), tok("?", "PUNCT", "punct", 6),
    ]
    prim = dict(concepts=[cap(noun), cap(place), cap(partners[:-1])],
                properties=[attr, "date"],
                relationships=["isPartOf", camel(verb, "to")],
                filters=[f"external {partners}", f"between {y1} and {y2}"],
                cardinality="MULTIPLE", aggregation=False)
    return text, tokens, 5, "WH", prim


def t_record_whether(r):
    place = r.choice(PLACES)
    noun, _ = r.choice(NOUNS)
    v1, v2 = r.sample(VERBS_ED, 2)
    num = r.choice(NUMBERS)
    text = (f"Does the {place} record whether each {noun} has been {v1} "
            f"or {v2} during the last {num} years?")
    tokens = [
        tok("Does", "AUX", "aux", 3), tok("the", "DET", "det", 2),
        tok(place, "NOUN", "nsubj", 3), tok("record", "VERB", "ROOT", 3),
        tok("whether", "SCONJ", "mark", 9), tok("each", "DET", "det", 6),
        tok(noun, "NOUN", "nsubjpass", 9), tok("has", "AUX", "aux", 9),
        tok("been", "AUX", "auxpass", 9), tok(v1, "VERB", "ccomp", 3),
        tok("or", "CCONJ", "cc", 9), tok(v2, "VERB", "conj", 9),
        tok("during", "ADP", "prep", 9), tok("the", "DET", "det", 16),
        tok("last", "ADJ", "amod", 16), tok(num, "NUM", "nummod", 16),
        tok("years", "NOUN", "pobj", 12), tok("?", "PUNCT", "punct", 3),
    ]
    prim = dict(concepts=[cap(place), cap(noun)], properties=[],
                relationships=[v1, v2], filters=[f"last {num} years"],
                cardinality="EXISTENCE", aggregation=False)
    return text, tokens, 3, "BOOLEAN", prim


def t_associated_with(r):
    a1, a2 = r.sample(ATTRS, 2)
    noun, _ = r.choice(NOUNS)
    place = r.choice(PLACES)
    text = f"What {a1} and {a2} are associated with each {noun} held in the {place}?"
    tokens = [
        tok("What", "DET", "det", 1), tok(a1, "NOUN", "nsubjpass", 5),
        tok("and", "CCONJ", "cc", 1), tok(a2, "NOUN", "conj", 1),
        tok("are", "AUX", "auxpass", 5), tok("associated", "VERB", "ROOT", 5),
        tok("with", "ADP", "prep", 5), tok("each", "DET", "det", 8),
        tok(noun, "NOUN", "pobj", 6), tok("held", "VERB", "acl", 8),
        tok("in", "ADP", "prep", 9), tok("the", "DET", "det", 12),
        tok(place, "NOUN", "pobj", 10), tok("?", "PUNCT", "punct", 5),
    ]
    prim = dict(concepts=[cap(noun), cap(place)], properties=[a1, a2],
                relationships=["heldIn"], filters=[],
                cardinality="MULTIPLE", aggregation=False)
    return text, tokens, 4, "WH", prim


TEMPLATES = {
    "attr_of": t_attr_of, "passive_by": t_passive_by, "how_many": t_how_many,
    "is_adj": t_is_adj, "who_did": t_who_did, "relcl": t_relcl,
    "loan_window": t_loan_window, "record_whether": t_record_whether,
    "associated_with": t_associated_with,
}


def dedupe(items):
    seen, out = set(), []
    for it in items:
        if it.lower() not in seen:
            seen.add(it.lower())
            out.append(it)
    return out


def score_ratings(score, i):
    if score == 3:
        return [1, 1, 1]
    if score == -3:
        return [-1, -1, -1]
    odd = -1 if score == 1 else 1
    base = 1 if score == 1 else -1
    ratings = [base] * 3
    ratings[i % 3] = odd
    return ratings


def word_vector(word, dim, cache, rng_seed):
    key = word.lower()
    if key not in cache:
        h = sum((i + 1) * ord(c) for i, c in enumerate(key))
        cache[key] = np.random.default_rng(rng_seed * 100003 + h).standard_normal(dim)
    return cache[key]


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    r = random.Random(SEED)
    rows, ann, seen = [], [], set()
    counter = 0
    for set_id, n, hist, n_comm, n_amb, n_rel3, n_blank in SETS:
        scores = [3] * hist[0] + [1] * hist[1] + [-1] * hist[2] + [-3] * hist[3]
        r.shuffle(scores)
        # ambiguous CQs are always commented; prefer rejected CQs for the remaining comments
        order = sorted(range(n), key=lambda i: (scores[i], r.random()))
        commented = set(order[:n_comm])
        ambiguous = set(r.sample(sorted(commented), n_amb))
        idx = list(range(n))
        r.shuffle(idx)
        blank = set(idx[:n_blank])
        rel3 = set(idx[n_blank:n_blank + n_rel3])
        templates = TEMPLATES_FOR_SET[set_id]
        for i in range(n):
            counter += 1
            cq_id = f"CQ{counter:03d}"
            while True:
                name = templates[(i + r.randrange(len(templates))) % len(templates)]
                text, tokens, chunks, kind, prim = TEMPLATES[name](r)
                if text not in seen:
                    seen.add(text)
                    break
            rel = "" if i in blank else ("3" if i in rel3 else "4")
            rows.append([cq_id, set_id, text, *map(str, score_ratings(scores[i], i)),
                         str(i in commented).lower(), str(i in ambiguous).lower(), rel])
            for k in ("concepts", "properties", "relationships", "filters"):
                prim[k] = dedupe(prim[k])
            ann.append({"cq_id": cq_id, "tokens": tokens, "noun_chunks": chunks,
                        "interrogative": kind, "primitives": prim})

    import csv
    with open(out / "askcq_synthetic.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["cq_id", "set_id", "text", "rater1", "rater2", "rater3",
                    "commented", "ambiguous", "relevance"])
        w.writerows(rows)
    with open(out / "askcq_synthetic.annotations.json", "w", encoding="utf-8") as f:
        json.dump({"dep_scheme": "classic", "cqs": ann}, f, indent=1)
        f.write("\n")

    # bag-of-words mock embeddings: shared vocabulary yields shared direction
    dim = 32
    cache = {}
    set_bias = {s[0]: np.random.default_rng(SEED + j).standard_normal(dim) for j, s in enumerate(SETS)}
    noise_rng = np.random.default_rng(SEED)
    vectors = {}
    for row in rows:
        words = [w.strip("?,").lower() for w in row[2].split()]
        v = sum(word_vector(w, dim, cache, SEED) for w in words if w)
        v = v / np.linalg.norm(v)
        v = v + 0.35 * set_bias[row[1]] / np.linalg.norm(set_bias[row[1]])
        v = v + 0.15 * noise_rng.standard_normal(dim) / np.sqrt(dim)
        vectors[row[0]] = [round(float(x), 6) for x in v]
    with open(out / "askcq_synthetic.embeddings.json", "w", encoding="utf-8") as f:
        json.dump({"dim": dim, "vectors": vectors}, f)
        f.write("\n")


if __name__ == "__main__":
    main()
