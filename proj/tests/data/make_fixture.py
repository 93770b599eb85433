#!/usr/bin/env python3
"""Regenerates the bundled 200-paragraph fixture corpus under tests/data/fixture/.

The output is fully determined by the seed below; rerunning it is a no-op.
"""
import json
import pathlib
import random

SEED = 20230519
OUT = pathlib.Path(__file__).resolve().parent / "fixture"

SUBJECTS = ["the committee", "the river", "most farmers", "the new policy", "the old bridge",
            "every student", "the museum", "the council", "a small company", "the survey",
            "the local newspaper", "the orchestra", "the research team", "the village",
            "many historians", "the railway", "the festival", "the library", "the ministry",
            "the army", "the school board", "the harbour", "the cathedral", "the league"]
VERBS = ["approved", "rejected", "expanded", "delayed", "supported", "criticised",
         "funded", "rebuilt", "replaced", "documented", "studied", "announced",
         "recorded", "opened", "closed", "reduced", "increased", "published"]
OBJECTS = ["the proposal", "the northern route", "a second edition", "the annual report",
           "the eastern wing", "its original charter", "the trade agreement",
           "a larger budget", "the winter season", "the water supply", "the final draft",
           "a public inquiry", "the coastal road", "the early records", "the grain market"]
PLACES = ["in 1874", "after the war", "during the summer", "in the following decade",
          "near the border", "within two years", "at the regional level", "in the capital"]

PREMISE = ["because", "because of", "due to", "owing to", "given that", "since", "thanks to",
           "on account of", "in view of", "as a result of", "considering that", "according to"]
CONCLUSION = ["therefore", "thus", "hence", "consequently", "as a result", "accordingly",
              "for this reason", "it follows that", "in conclusion", "eventually"]
NEGATIVE = ["not", "never", "no longer", "hardly", "rarely", "seldom", "without", "isn't",
            "wasn't", "didn't", "couldn't", "cannot", "nobody", "nothing"]
ADVERSATIVE = ["however", "although", "but", "nevertheless", "yet", "whereas", "despite",
               "in spite of", "on the contrary", "in contrast", "even though", "unless"]
COORDINATING = ["moreover", "in addition", "furthermore", "meanwhile", "besides",
                "additionally", "similarly", "likewise", "on the other hand", "as well"]


def clause(rng):
    return f"{rng.choice(SUBJECTS)} {rng.choice(VERBS)} {rng.choice(OBJECTS)} {rng.choice(PLACES)}"


def cap(s):
    return s[0].upper() + s[1:]


def sentence(rng):
    kind = rng.randrange(9)
    a, b = clause(rng), clause(rng)
    if kind == 0:
        p = rng.choice(["because", "since", "given that", "considering that"])
        return f"{cap(a)} {p} {b}."
    if kind == 1:
        p = rng.choice(["because of", "due to", "owing to", "thanks to", "on account of",
                        "in view of", "as a result of", "according to"])
        return f"{cap(a)} {p} {rng.choice(OBJECTS)}."
    if kind == 2:
        return f"{cap(a)}; {rng.choice(CONCLUSION)}, {b}."
    if kind == 3:
        n = rng.choice(NEGATIVE)
        if n in ("isn't", "wasn't"):
            return f"{cap(rng.choice(OBJECTS))} {n} {rng.choice(['finished', 'popular', 'complete', 'available'])} {rng.choice(PLACES)}."
        if n in ("didn't", "couldn't", "cannot", "not", "never", "hardly", "rarely", "seldom", "no longer"):
            verb = rng.choice(["support", "approve", "fund", "study", "replace", "open"])
            aux = "" if n in ("didn't", "couldn't", "cannot") else "did "
            if n in ("never", "hardly", "rarely", "seldom", "no longer"):
                return f"{cap(rng.choice(SUBJECTS))} {n} {rng.choice(VERBS)} {rng.choice(OBJECTS)}."
            return f"{cap(rng.choice(SUBJECTS))} {aux}{n} {verb} {rng.choice(OBJECTS)}."
        if n == "without":
            return f"{cap(a)} without {rng.choice(OBJECTS)}."
        return f"{cap(n)} {rng.choice(VERBS)} {rng.choice(OBJECTS)} {rng.choice(PLACES)}."
    if kind == 4:
        p = rng.choice(["however", "nevertheless", "on the contrary", "in contrast"])
        return f"{cap(p)}, {a}."
    if kind == 5:
        p = rng.choice(["but", "yet", "whereas", "although", "even though", "unless"])
        return f"{cap(a)}, {p} {b}."
    if kind == 6:
        p = rng.choice(["despite", "in spite of"])
        return f"{cap(a)} {p} {rng.choice(OBJECTS)}."
    if kind == 7:
        p = rng.choice(COORDINATING[:-1])
        return f"{cap(p)}, {a}."
    return f"{cap(a)} and {b} as well."


def rich_paragraph(rng):
    sents = [sentence(rng) for _ in range(rng.randint(2, 5))]
    text = " ".join(sents)
    if rng.random() < 0.15:
        text = text.replace("'", "’")
    return text


def plain_paragraph(rng):
    return f"{cap(clause(rng))} and {clause(rng)}. {cap(clause(rng))}."


def short_paragraph(rng):
    return rng.choice(["Because it rained.", "However, see above.", "Not applicable.",
                       "Thus it ended.", "Notes and references", "Moreover, none."])


def main():
    rng = random.Random(SEED)
    kinds = ["rich"] * 170 + ["plain"] * 15 + ["short"] * 15
    rng.shuffle(kinds)
    make = {"rich": rich_paragraph, "plain": plain_paragraph, "short": short_paragraph}
    paragraphs = [make[k](rng) for k in kinds]

    OUT.mkdir(parents=True, exist_ok=True)
    for i in range(3):
        chunk = paragraphs[i * 50:(i + 1) * 50]
        (OUT / f"articles_{i}.txt").write_text("\n\n".join(chunk) + "\n", encoding="utf-8")
    tail = paragraphs[150:]
    with open(OUT / "records.jsonl", "w", encoding="utf-8") as f:
        for r in range(10):
            text = "\n\n".join(tail[r * 5:(r + 1) * 5])
            f.write(json.dumps({"id": f"wiki-{r:03d}", "text": text}, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
