"""Regenerates the frozen oracle tables under crates/core/tests/data/.

readability_oracle.json: 20 sentences with counts from a separate regex-based
implementation (checked by hand) and FKGL/DCR evaluated from those counts.

syllable_oracle.json: 100 words with syllable counts taken from the CMU
pronouncing dictionary (number of stressed/unstressed vowel phones).

Usage: python3 tools/make_oracles.py /path/to/cmudict.dict
"""

import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "crates" / "core" / "tests" / "data"
WORDLIST = ROOT / "crates" / "core" / "data" / "dale_chall.txt"

SENTENCES = [
    "The cat sat on the mat.",
    "What is the name of the museum?",
    "Which items were loaned to a partner?",
    "Who made this instrument?",
    "When was the painting restored?",
    "How many objects are in the collection?",
    "Is the guitar on display? Who owns it?",
    "Which artists are associated with the workshop?",
    "What materials were used to build the violin?",
    "Where was the table made and by whom?",
    "List the performances that took place in 1990.",
    "Does the record state whether the loan was approved?",
    "Which well-known composers wrote music for the organ?",
    "What is the provenance of the manuscript?",
    "Who was responsible for the conservation treatment?",
    "How old is the oldest drum in the archive?",
    "Which exhibitions displayed the instrument's case?",
    "Give me every restoration event! Sort them by date.",
    "Are there photographs of the concert hall?",
    "What documentation supports the attribution of the harpsichord to a specific maker?",
]

WORD_RE = re.compile(r"[A-Za-z0-9]+(?:['\-][A-Za-z0-9]+)*")


def syllables(word):
    word = word.split("'")[0]
    total = 0
    for part in word.lower().split("-"):
        letters = re.sub(r"[^a-z]", "", part)
        n = len(re.findall(r"[aeiouy]+", letters))
        if (
            n > 1
            and re.search(r"[^aeiouy]e$", letters)
            and not re.search(r"[^aeiouy]le$", letters)
        ):
            n -= 1
        total += max(n, 1)
    return max(total, 1)


def load_list():
    return {l.strip().lower() for l in WORDLIST.read_text().splitlines() if l.strip()}


def familiar(word, easy):
    w = word.lower()
    if any(c.isdigit() for c in w):
        return True

    def base(x):
        if x in easy:
            return True
        if x.endswith("'s"):
            x = x[:-2]
            if x in easy:
                return True
        cands = []
        if x.endswith("ies") or x.endswith("ied"):
            cands.append(x[:-3] + "y")
        if x.endswith("es"):
            cands.append(x[:-2])
        if x.endswith("s"):
            cands.append(x[:-1])
        for suf in ("ed", "ing"):
            if x.endswith(suf) and len(x) > len(suf):
                s = x[: -len(suf)]
                cands += [s, s + "e"]
                if len(s) >= 2 and s[-1] == s[-2] and s[-1] not in "aeiou":
                    cands.append(s[:-1])
        return any(c in easy for c in cands)

    if base(w):
        return True
    if "-" in w:
        return all(base(p) for p in w.split("-") if p)
    return False


def readability(easy):
    rows = []
    for s in SENTENCES:
        words = WORD_RE.findall(s)
        sentences = max(1, len([seg for seg in re.split(r"[.?!]", s) if re.search(r"[A-Za-z0-9]", seg)]))
        syl = sum(syllables(w) for w in words)
        difficult = sorted(w for w in words if not familiar(w, easy))
        w, st = float(len(words)), float(sentences)
        fkgl = 11.8 * (syl / w) + 0.39 * (w / st) - 15.59
        dcr = 0.1579 * (len(difficult) / w * 100.0) + 0.0496 * (w / st)
        rows.append(
            {
                "text": s,
                "words": len(words),
                "sentences": sentences,
                "syllables": syl,
                "difficult_words": len(difficult),
                "difficult": difficult,
                "fkgl": fkgl,
                "dcr": dcr,
            }
        )
    return rows


VALIDATION_WORDS = """
museum instrument collection painting artist composer performance exhibition
restoration manuscript provenance archive violin guitar organ harpsichord
drum piano orchestra concert hall record loan partner object material
workshop maker owner date event place century attribution
conservation treatment documentation photograph display case catalogue
description identifier category genre style period region country city
person organisation institution library curator donor acquisition purchase
gift value price condition damage repair inventory location storage gallery
visitor audience ticket recording album song melody rhythm harmony tempo
lyrics chorus verse opera symphony sonata quartet soloist conductor rehearsal
premiere festival venue stage costume theatre dancer ballet sculpture canvas
label title
""".split()


def cmu_syllables(path):
    counts = {}
    for line in Path(path).read_text(encoding="latin-1").splitlines():
        if not line or line.startswith(";;;"):
            continue
        head, *phones = line.split(" #")[0].split()
        if "(" in head:
            continue
        counts[head] = sum(1 for p in phones if p[-1].isdigit())
    return counts


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    easy = load_list()
    (OUT / "readability_oracle.json").write_text(json.dumps(readability(easy), indent=1) + "\n")
    cmu = cmu_syllables(sys.argv[1])
    words = []
    for w in VALIDATION_WORDS:
        key = w.lower()
        if key not in cmu:
            raise SystemExit(f"not in CMU dictionary: {w}")
        words.append({"word": w, "syllables": cmu[key]})
    assert len(words) == 100, len(words)
    (OUT / "syllable_oracle.json").write_text(json.dumps(words, indent=1) + "\n")


if __name__ == "__main__":
    main()
