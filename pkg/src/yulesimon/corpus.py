"""Text ingestion: turn a raw book file into word-frequency counts.

The pipeline is read -> strip boilerplate -> tokenize -> count.  Tokens
are maximal runs of letters with optional internal apostrophes
("don't" stays one token, a trailing quote is dropped); digits,
punctuation and markup act as separators.  Counts feed straight into the
samplers and the fixed-point estimator.
"""

import re
from collections import Counter
from dataclasses import dataclass

from .errors import EncodingError, ParameterError

# Letters only (no digits, no underscore), with optional internal
# apostrophes joining letter runs.
_TOKEN_RE = re.compile(r"[^\W\d_]+(?:'[^\W\d_]+)*", re.UNICODE)

_START_RE = re.compile(
    r"^[^\S\n]*\*{3}\s*START OF (?:THE|THIS) PROJECT GUTENBERG EBOOK"
    r"[^\n]*$",
    re.IGNORECASE | re.MULTILINE)
_END_RE = re.compile(
    r"^[^\S\n]*\*{3}\s*END OF (?:THE|THIS) PROJECT GUTENBERG EBOOK"
    r"[^\n]*$",
    re.IGNORECASE | re.MULTILINE)


@dataclass(frozen=True)
class TokenizerRules:
    """Tokenization switches; the token pattern itself is fixed."""

    case_folding: bool = True


@dataclass(frozen=True)
class FrequencyVector:
    """Distinct words and how often each occurs."""

    entries: dict

    def __post_init__(self):
        for word, count in self.entries.items():
            if not isinstance(count, int) or count < 1:
                raise ParameterError(
                    f"count for {word!r} must be an integer >= 1, "
                    f"got {count!r}")

    @property
    def n(self):
        return len(self.entries)

    @property
    def total_tokens(self):
        return sum(self.entries.values())

    def counts(self):
        """Counts in serialization order (descending count, then word)."""
        return [count for _, count in self.sorted_items()]

    def sorted_items(self):
        return sorted(self.entries.items(), key=lambda kv: (-kv[1], kv[0]))


def read_text(path, encoding="utf-8"):
    """Read a text file, reporting the byte offset of any decode failure."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        return raw.decode(encoding)
    except UnicodeDecodeError as exc:
        raise EncodingError(
            f"{path}: not valid {encoding} at byte {exc.start}",
            byte_offset=exc.start) from None


def tokenize(text, rules=None):
    """Split text into normalized tokens.

    Case-folds (unless disabled), treats the typographic apostrophe
    U+2019 as a plain one, and keeps only letter runs with internal
    apostrophes.
    """
    if rules is None:
        rules = TokenizerRules()
    if not isinstance(text, str):
        raise ParameterError("text must be a decoded string; use read_text "
                             "for files")
    text = text.replace("’", "'")
    if rules.case_folding:
        text = text.casefold()
    return _TOKEN_RE.findall(text)


def word_frequencies(tokens):
    """Exact per-token counts; empty input gives an empty vector."""
    return FrequencyVector(entries=dict(Counter(tokens)))


def strip_gutenberg_boilerplate(text):
    """Cut license header/footer between the standard marker lines.

    Returns (body, markers_found).  When either marker line is missing
    the text comes back unchanged with the flag False so callers can
    warn instead of silently analyzing license text.
    """
    start = _START_RE.search(text)
    end = _END_RE.search(text)
    if start is None or end is None or end.start() <= start.end():
        return text, False
    return text[start.end():end.start()], True


def frequencies_from_file(path, rules=None, strip_boilerplate=True):
    """File-to-counts convenience wrapper.

    Returns (FrequencyVector, markers_found); ``markers_found`` is True
    whenever boilerplate stripping was either disabled or successful.
    """
    text = read_text(path)
    markers_found = True
    if strip_boilerplate:
        text, markers_found = strip_gutenberg_boilerplate(text)
    return word_frequencies(tokenize(text, rules)), markers_found
