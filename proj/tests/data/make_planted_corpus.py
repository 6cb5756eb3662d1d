#!/usr/bin/env python3
"""Writes planted_corpus.tsv: 5 paraphrase groups x 10 sentences.

Each group draws its sentences from slot-filled frames over a small group
vocabulary, so paraphrases share most content words. A few background
phrases ("in humans", "the risk of", "is", "of") are shared across groups
to keep between-group distances below 1. The liver group embeds two
paraphrases of one finding verbatim (lines 1 and 2 of that group).

Columns: group, sentence.
"""

import itertools
import pathlib
import random

HERE = pathlib.Path(__file__).resolve().parent

SBP_1 = ("Hepatic reticuloendothelial function is impaired to the same degree in cirrhotic "
         "patients with or without a previous history of SBP.")
SBP_2 = ("History of spontaneous bacterial peritonitis does not affect impairment of hepatic "
         "reticuloendothelial function in cirrhotic patients.")

SLOTS = {
    "liver": (
        ["Hepatic reticuloendothelial function", "Reticuloendothelial function of the liver",
         "Hepatic reticuloendothelial activity"],
        ["is impaired in cirrhotic patients", "is equally impaired in cirrhotic patients",
         "is reduced in cirrhotic patients"],
        ["regardless of a history of spontaneous bacterial peritonitis",
         "with or without previous spontaneous bacterial peritonitis",
         "irrespective of a previous history of SBP"],
    ),
    "malaria": (
        ["Malaria", "Human malaria", "Malaria infection"],
        ["is transmitted to humans by", "is spread to humans by", "is carried to humans by"],
        ["Anopheles mosquitoes", "infected mosquitoes", "infected Anopheles mosquitoes"],
    ),
    "apoe": (
        ["The APOE4 allele", "APOE4", "The epsilon4 allele of APOE"],
        ["increases the risk of", "raises the genetic risk of", "is a major risk factor for"],
        ["late-onset Alzheimer disease", "Alzheimer disease in humans", "Alzheimer disease"],
    ),
    "insulin": (
        ["Insulin", "The hormone insulin", "Pancreatic insulin"],
        ["lowers", "reduces", "decreases"],
        ["blood glucose levels", "the blood glucose concentration", "plasma glucose levels"],
    ),
    "brca1": (
        ["BRCA1", "The BRCA1 protein", "The tumor suppressor BRCA1"],
        ["is required for", "promotes", "mediates"],
        ["homologous recombination repair of DNA double-strand breaks",
         "repair of DNA double-strand breaks by homologous recombination",
         "DNA double-strand break repair"],
    ),
}


def group_sentences(name, rng):
    combos = list(itertools.product(*SLOTS[name]))
    rng.shuffle(combos)
    out = [SBP_1, SBP_2] if name == "liver" else []
    for subject, verb, obj in combos:
        if len(out) == 10:
            break
        out.append(f"{subject} {verb} {obj}.")
    return out


def main():
    rng = random.Random(42)
    lines = ["# group\tsentence"]
    for name in SLOTS:
        lines += [f"{name}\t{s}" for s in group_sentences(name, rng)]
    (HERE / "planted_corpus.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
