"""Access to the bundled common-English word list.

The list decides what counts as an "artificial" word during extraction
and which lexicon patterns are ambiguous during mention matching. It is
a plain newline-separated lowercase file and can be swapped out through
the rule config.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def default_common_words() -> frozenset[str]:
    text = resources.files("swcatalog").joinpath("data/common_words.txt").read_text("utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


def load_word_file(path) -> frozenset[str]:
    with open(path, "r", encoding="utf-8") as fh:
        return frozenset(w.strip().lower() for w in fh if w.strip())
