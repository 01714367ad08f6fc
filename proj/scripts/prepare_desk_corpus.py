#!/usr/bin/env python3
# Copyright 2026 The Truecase Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds the desk-scale cased English corpus from public-domain texts.

The texts are pulled from PyPI packages that bundle them (the only network
source this project assumes), tokenized on whitespace/punctuation, deduped,
shuffled with a fixed seed and split into:

  train.txt          truecaser training sentences
  test.txt           held-out sentences for NL precision/recall/F1
  lm_train.txt       language-model experiment, training side
  lm_eval.txt        language-model experiment, evaluation side
  brands_train.txt   supplement with modern mixed-case product names
  brands_heldout.txt the same names in contexts absent from training

Usage: prepare_desk_corpus.py OUT_DIR [--cache DIR]
"""

import argparse
import html
import json
import os
import random
import re
import subprocess
import sys
import tarfile
import zipfile

PACKAGES = [
    ("pythonbible-kjv==0.0.2", "pythonbible_kjv-0.0.2-py3-none-any.whl"),
    ("bookofmormon==0.1.0", "bookofmormon-0.1.0.tar.gz"),
    ("shakespeare==0.6", "shakespeare-0.6.tar.gz"),
    ("cia-world-factbook==0.1.2", "cia_world_factbook-0.1.2-py3-none-any.whl"),
]

SEED = 20240601
TEST_SIZE = 5000
LM_TRAIN_SIZE = 27000
LM_EVAL_SIZE = 3000
MIN_TOKENS = 3
MAX_TOKENS = 60

TOKEN_RE = re.compile(r"'?\w+(?:['\-]\w+)*|--+|\.\.\.|[^\w\s]", re.UNICODE)


def tokenize(text):
    text = (text.replace("’", "'").replace("‘", "'")
            .replace("“", '"').replace("”", '"'))
    return TOKEN_RE.findall(text)


def split_sentences(text):
    text = re.sub(r"\s+", " ", text).strip()
    return [s for s in re.split(r"(?<=[.?!])\s+(?=[\"'(]?[A-Z0-9])", text) if s]


def fetch(cache):
    os.makedirs(cache, exist_ok=True)
    for spec, filename in PACKAGES:
        if os.path.exists(os.path.join(cache, filename)):
            continue
        args = [sys.executable, "-m", "pip", "download", "--no-deps", "-d", cache, spec]
        if filename.endswith(".tar.gz"):
            args[5:5] = ["--no-binary", ":all:"]
        subprocess.run(args, check=True)


def read_member(archive, suffix):
    if archive.endswith(".whl"):
        with zipfile.ZipFile(archive) as z:
            for name in sorted(z.namelist()):
                if name.endswith(suffix):
                    yield name, z.read(name).decode("utf-8")
    else:
        with tarfile.open(archive) as t:
            for m in sorted(t.getmembers(), key=lambda m: m.name):
                if m.isfile() and m.name.endswith(suffix):
                    yield m.name, t.extractfile(m).read().decode("utf-8", "replace")


def kjv_sentences(cache):
    archive = os.path.join(cache, PACKAGES[0][1])
    for _, src in read_member(archive, "/plain_text_bible.py"):
        body = re.search(r'"""(.*?)"""', src, re.S).group(1)
        body = re.sub(r"\b\d+\. ", " ", body).replace("[", "").replace("]", "")
        yield from split_sentences(body)


def bom_sentences(cache):
    archive = os.path.join(cache, PACKAGES[1][1])
    for _, src in read_member(archive, "book-of-mormon.json"):
        data = json.loads(src)
        for book in data["books"]:
            for chapter in book["chapters"]:
                for verse in chapter["verses"]:
                    yield from split_sentences(verse["text"])


SPEAKER_RE = re.compile(r"^[A-Z][A-Za-z]*(?: [A-Z][A-Za-z]*)*\.$")


def shakespeare_lines(cache):
    # Verse lines are kept as units: each begins with a capital, which is a
    # consistent, learnable convention.  Speaker tags, headings and stage
    # directions are dropped.
    archive = os.path.join(cache, PACKAGES[2][1])
    for name, src in read_member(archive, "_gut.txt"):
        lines = src.splitlines()
        start = 0
        for i, line in enumerate(lines):
            if line.strip().startswith("ACT I") or line.strip().startswith("Scene I"):
                start = i
                break
        in_direction = False
        for line in lines[start:]:
            s = line.strip()
            if not s:
                continue
            if s.startswith("["):
                in_direction = not s.endswith("]")
                continue
            if in_direction:
                in_direction = not s.endswith("]")
                continue
            if SPEAKER_RE.match(s) or s.isupper() or s.startswith(("ACT ", "Scene ", "SCENE ")):
                continue
            yield re.sub(r"\[.*?\]", "", s)


def factbook_sentences(cache):
    archive = os.path.join(cache, PACKAGES[3][1])

    def walk(node):
        if isinstance(node, dict):
            for key in sorted(node):
                value = node[key]
                if key == "text" and isinstance(value, str):
                    yield value
                else:
                    yield from walk(value)
        elif isinstance(node, list):
            for item in node:
                yield from walk(item)

    for _, src in read_member(archive, ".json"):
        for text in walk(json.loads(src)):
            text = html.unescape(re.sub(r"<[^>]+>", " ", text))
            for s in split_sentences(text):
                if s.endswith(".") and len(s.split()) >= 6:
                    yield s


def keep(tokens):
    if not (MIN_TOKENS <= len(tokens) <= MAX_TOKENS):
        return False
    letters = sum(1 for t in tokens if any(c.isalpha() for c in t))
    return letters * 2 >= len(tokens)


BRANDS = ["iPhone", "McDonald's", "Hewlett-Packard"]

TRAIN_TEMPLATES = [
    "She bought a new {b} last week .",
    "The {b} store was crowded on Saturday .",
    "My brother works for {b} now .",
    "We talked about {b} at dinner .",
    "He said the {b} deal was good .",
    "They opened a {b} near the station .",
    "I read an article about {b} yesterday .",
    "The price of the {b} went up again .",
    "Our office ordered ten {b} units .",
    "People lined up outside {b} in the rain .",
    "A reporter asked {b} for a comment .",
    "The old {b} still works fine .",
    "There is a {b} on the corner .",
    "You can return the {b} within a month .",
    "Her first job was at {b} .",
    "The {b} logo is easy to recognize .",
    "Nobody expected {b} to change so quickly .",
    "He dropped his {b} in the river .",
    "The school received a gift from {b} .",
    "My mother does not trust {b} .",
    "A long line formed at {b} this morning .",
    "The {b} manual was missing .",
    "We compared {b} with its rivals .",
    "An engineer from {b} gave a talk .",
    "The town council met with {b} officials .",
    "I left my {b} on the train .",
    "The kids wanted to go to {b} after school .",
    "Sales at {b} rose last quarter .",
    "The {b} model from last year is cheaper .",
    "His uncle sold shares in {b} .",
    "They wrote a book about the history of {b} .",
    "The {b} announcement surprised everyone .",
    "She fixed the {b} herself .",
    "A fire started near the {b} building .",
    "The review praised {b} for its design .",
    "We waited for the {b} update all day .",
    "My friend collects old {b} adverts .",
    "The judge ruled against {b} on Monday .",
    "There were rumors about {b} again .",
    "The children drew pictures of {b} .",
]

HELDOUT_TEMPLATES = [
    "Grandfather finally learned to use the {b} .",
    "A stranger recommended {b} to the travellers .",
    "The museum displayed an early {b} prototype .",
    "During the storm the {b} sign fell down .",
    "Critics rarely mention {b} without sarcasm .",
    "The village had never heard of {b} before .",
    "An auditor examined the {b} accounts closely .",
    "Soldiers returning home asked about {b} first .",
]


def brand_sentences(templates):
    return [t.format(b=b) for b in BRANDS for t in templates]


def write(path, sentences):
    with open(path, "w", encoding="utf-8") as f:
        for s in sentences:
            f.write(s + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out_dir")
    parser.add_argument("--cache", default=os.path.join("build", "corpus-cache"))
    args = parser.parse_args()

    fetch(args.cache)
    seen = set()
    corpus = []
    for source in (kjv_sentences, bom_sentences, shakespeare_lines, factbook_sentences):
        count = 0
        for raw in source(args.cache):
            tokens = tokenize(raw)
            if not keep(tokens):
                continue
            line = " ".join(tokens)
            if line in seen:
                continue
            seen.add(line)
            corpus.append(line)
            count += 1
        print(f"{source.__name__}: {count}", file=sys.stderr)

    rng = random.Random(SEED)
    rng.shuffle(corpus)
    test = corpus[:TEST_SIZE]
    lm_train = corpus[TEST_SIZE:TEST_SIZE + LM_TRAIN_SIZE]
    lm_eval = corpus[TEST_SIZE + LM_TRAIN_SIZE:TEST_SIZE + LM_TRAIN_SIZE + LM_EVAL_SIZE]
    train = corpus[TEST_SIZE + LM_TRAIN_SIZE + LM_EVAL_SIZE:]

    os.makedirs(args.out_dir, exist_ok=True)
    write(os.path.join(args.out_dir, "train.txt"), train)
    write(os.path.join(args.out_dir, "test.txt"), test)
    write(os.path.join(args.out_dir, "lm_train.txt"), lm_train)
    write(os.path.join(args.out_dir, "lm_eval.txt"), lm_eval)
    write(os.path.join(args.out_dir, "brands_train.txt"), brand_sentences(TRAIN_TEMPLATES))
    write(os.path.join(args.out_dir, "brands_heldout.txt"), brand_sentences(HELDOUT_TEMPLATES))
    print(f"train={len(train)} test={len(test)} lm_train={len(lm_train)} "
          f"lm_eval={len(lm_eval)}", file=sys.stderr)


if __name__ == "__main__":
    main()
