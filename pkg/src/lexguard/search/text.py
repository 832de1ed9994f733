"""Lexical pipeline: tokenizer, stemmer, and word-list loading.

Everything here is deterministic on purpose: query generation and
ranking are pinned down to the token level so retrieval results can be
checked against an exhaustive-scan oracle.

The stemmer is the classic Porter suffix-stripping algorithm with one
extra fold: a stem ending in "ens" becomes "enc", which merges the
-se/-ce spelling pairs (license/licence, offense/offence) that matter
for the modality lexicon.
"""

from __future__ import annotations

import re
from importlib import resources

_TOKEN_RE = re.compile(r"[a-z0-9]+")

_VOWELS = frozenset("aeiou")


def tokenize(text: str) -> list[str]:
    """Lowercase alphanumeric tokens in order of appearance."""
    return _TOKEN_RE.findall(text.lower())


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of vowel-consonant sequences (the Porter m value)."""
    m = 0
    prev_consonant = True
    started = False
    for i in range(len(stem)):
        consonant = _is_consonant(stem, i)
        if not consonant:
            started = True
        if started and consonant and not prev_consonant:
            m += 1
        prev_consonant = consonant
    return m


def _contains_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and _is_consonant(word, len(word) - 1)
    )


def _ends_cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    if not (
        _is_consonant(word, len(word) - 3)
        and not _is_consonant(word, len(word) - 2)
        and _is_consonant(word, len(word) - 1)
    ):
        return False
    return word[-1] not in "wxy"


_STEP2 = (
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
)

_STEP3 = (
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
)

_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def _porter(word: str) -> str:
    if len(word) <= 2:
        return word

    # step 1a
    if word.endswith("sses"):
        word = word[:-2]
    elif word.endswith("ies"):
        word = word[:-2]
    elif word.endswith("ss"):
        pass
    elif word.endswith("s"):
        word = word[:-1]

    # step 1b
    if word.endswith("eed"):
        if _measure(word[:-3]) > 0:
            word = word[:-1]
    else:
        stripped = None
        if word.endswith("ed") and _contains_vowel(word[:-2]):
            stripped = word[:-2]
        elif word.endswith("ing") and _contains_vowel(word[:-3]):
            stripped = word[:-3]
        if stripped is not None:
            word = stripped
            if word.endswith(("at", "bl", "iz")):
                word += "e"
            elif _ends_double_consonant(word) and not word.endswith(("l", "s", "z")):
                word = word[:-1]
            elif _measure(word) == 1 and _ends_cvc(word):
                word += "e"

    # step 1c
    if word.endswith("y") and _contains_vowel(word[:-1]):
        word = word[:-1] + "i"

    # step 2
    for suffix, replacement in _STEP2:
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if _measure(stem) > 0:
                word = stem + replacement
            break

    # step 3
    for suffix, replacement in _STEP3:
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if _measure(stem) > 0:
                word = stem + replacement
            break

    # step 4
    for suffix in _STEP4:
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if suffix == "ion" and not stem.endswith(("s", "t")):
                continue
            if _measure(stem) > 1:
                word = stem
            break

    # step 5a
    if word.endswith("e"):
        stem = word[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            word = stem

    # step 5b
    if _measure(word) > 1 and _ends_double_consonant(word) and word.endswith("l"):
        word = word[:-1]

    return word


def stem(token: str) -> str:
    """Stem one lowercase token; non-alphabetic tokens pass through."""
    if not token.isalpha():
        return token
    word = _porter(token)
    if word.endswith("ens"):
        word = word[:-1] + "c"
    return word


def _load_word_lines(text: str) -> list[str]:
    words = []
    for line in text.splitlines():
        entry = line.strip()
        if entry and not entry.startswith("#"):
            words.append(entry.lower())
    return words


def load_word_file(path) -> list[str]:
    """One entry per line, ``#`` comments and blank lines skipped."""
    with open(path, "r", encoding="utf-8") as handle:
        return _load_word_lines(handle.read())


def _packaged(name: str) -> list[str]:
    text = resources.files("lexguard.search").joinpath("data", name).read_text("utf-8")
    return _load_word_lines(text)


def default_stopwords() -> frozenset[str]:
    return frozenset(_packaged("stopwords.txt"))


def default_modality_lexicon() -> tuple[str, ...]:
    return tuple(_packaged("modality.txt"))


class Lexicon:
    """Stopword list plus the closed modality lexicon, stem-matched."""

    def __init__(self, stopwords=None, modality=None):
        self.stopwords = frozenset(stopwords) if stopwords is not None else default_stopwords()
        self.modality = tuple(modality) if modality is not None else default_modality_lexicon()
        # stem of each lexicon entry -> its canonical token
        self.modality_by_stem = {stem(tok): tok for tok in self.modality}

    def canonical_modality(self, token: str) -> str | None:
        return self.modality_by_stem.get(stem(token))
