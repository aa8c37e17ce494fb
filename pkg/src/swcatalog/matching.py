"""Dictionary-driven mention matching over titles and abstracts.

The curated catalog is compiled into a lexicon (one entry per name or
alias) and matched against every publication with a multi-pattern
automaton. Matches must sit at whole-word boundaries. Entries whose
pattern has internal capitals or digits match exactly; everything else
matches case-insensitively. Patterns that collide with everyday English
(or are at most two characters) are "ambiguous" and only count inside a
sentence that also contains a trigger word, or when a version token
follows immediately.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

from .extraction import DEFAULT_TRIGGER_WORDS, VERSION_TOKEN_RE
from .records import Corpus, SoftwareRecord
from .wordlist import default_common_words

FIELD_TITLE = "Title"
FIELD_ABSTRACT = "Abstract"
_FIELD_ORDER = {FIELD_TITLE: 0, FIELD_ABSTRACT: 1}


@dataclass(frozen=True)
class LexiconEntry:
    sw_id: str
    pattern: str
    policy: str  # StrictCase | CaseInsensitive
    ambiguous: bool


@dataclass(frozen=True)
class Mention:
    pub_id: str
    sw_id: str
    field: str
    start: int
    end: int


def fold(text: str) -> str:
    """Length-preserving lowercase used for case-insensitive matching."""
    return "".join(c.lower() if len(c.lower()) == 1 else c for c in text)


def classify_pattern(pattern: str, common_words) -> tuple[str, bool]:
    strict = any(c.isupper() for c in pattern[1:]) or any(c.isdigit() for c in pattern)
    policy = "StrictCase" if strict else "CaseInsensitive"
    ambiguous = pattern.lower() in common_words or len(pattern) <= 2
    return policy, ambiguous


class _Automaton:
    """Aho-Corasick over folded patterns; emits (pattern_index, end) pairs."""

    def __init__(self, patterns: list[str]):
        self.patterns = patterns
        self.goto: list[dict[str, int]] = [{}]
        self.fail = [0]
        self.out: list[list[int]] = [[]]
        for idx, pat in enumerate(patterns):
            state = 0
            for ch in pat:
                nxt = self.goto[state].get(ch)
                if nxt is None:
                    self.goto.append({})
                    self.fail.append(0)
                    self.out.append([])
                    nxt = len(self.goto) - 1
                    self.goto[state][ch] = nxt
                state = nxt
            self.out[state].append(idx)

        queue = deque()
        for state in self.goto[0].values():
            queue.append(state)
        while queue:
            state = queue.popleft()
            for ch, nxt in self.goto[state].items():
                queue.append(nxt)
                fall = self.fail[state]
                while fall and ch not in self.goto[fall]:
                    fall = self.fail[fall]
                self.fail[nxt] = self.goto[fall].get(ch, 0)
                if self.fail[nxt] == nxt:
                    self.fail[nxt] = 0
                self.out[nxt].extend(self.out[self.fail[nxt]])

    def scan(self, text: str):
        state = 0
        for pos, ch in enumerate(text):
            while state and ch not in self.goto[state]:
                state = self.fail[state]
            state = self.goto[state].get(ch, 0)
            for idx in self.out[state]:
                yield idx, pos + 1


class Lexicon:
    def __init__(self, entries: list[LexiconEntry],
                 trigger_words=DEFAULT_TRIGGER_WORDS):
        self.entries = list(entries)
        self.trigger_words = frozenset(w.lower() for w in trigger_words)
        self._automaton = _Automaton([fold(e.pattern) for e in self.entries])

    def __len__(self) -> int:
        return len(self.entries)


def compile_lexicon(catalog: list[SoftwareRecord], common_words=None,
                    trigger_words=DEFAULT_TRIGGER_WORDS) -> Lexicon:
    """One entry per catalog name or alias; duplicates keep every owner."""
    common = common_words if common_words is not None else default_common_words()
    entries = []
    seen = set()
    for record in catalog:
        for pattern in (record.name, *record.aliases):
            if (record.sw_id, pattern) in seen:
                continue
            seen.add((record.sw_id, pattern))
            policy, ambiguous = classify_pattern(pattern, common)
            entries.append(LexiconEntry(sw_id=record.sw_id, pattern=pattern,
                                        policy=policy, ambiguous=ambiguous))
    return Lexicon(entries)


def sentence_spans(text: str) -> list[tuple[int, int]]:
    """Half-open sentence ranges; breaks after . ! ? followed by whitespace."""
    spans = []
    start = 0
    for match in re.finditer(r"[.!?](?=\s)", text):
        spans.append((start, match.end()))
        start = match.end()
    spans.append((start, len(text)))
    return spans


def _core(chunk: str) -> str:
    """Chunk minus leading/trailing punctuation, like the title tokenizer."""
    left, right = 0, len(chunk)
    while left < right and not chunk[left].isalnum():
        left += 1
    while right > left and not chunk[right - 1].isalnum():
        right -= 1
    return chunk[left:right]


def _has_trigger(sentence: str, triggers) -> bool:
    return any(_core(match.group()).lower() in triggers
               for match in re.finditer(r"\S+", sentence))


def _version_follows(text: str, end: int, sentence_end: int) -> bool:
    match = re.match(r"\s*(\S+)", text[end:sentence_end])
    if not match:
        return False
    core = _core(match.group(1))
    return bool(core) and bool(VERSION_TOKEN_RE.match(core))


def _boundary_ok(text: str, start: int, end: int) -> bool:
    if start > 0 and text[start - 1].isalnum():
        return False
    if end < len(text) and text[end].isalnum():
        return False
    return True


def scan_field(text: str, lexicon: Lexicon) -> list[tuple[int, int, int]]:
    """All accepted occurrences as (entry_index, start, end)."""
    folded = fold(text)
    sentences = sentence_spans(text)

    raw: dict[int, list[tuple[int, int]]] = {}
    for idx, end in lexicon._automaton.scan(folded):
        entry = lexicon.entries[idx]
        start = end - len(entry.pattern)
        if not _boundary_ok(text, start, end):
            continue
        if entry.policy == "StrictCase" and text[start:end] != entry.pattern:
            continue
        if entry.ambiguous:
            s_start, s_end = next((s, e) for s, e in sentences if s <= start < e)
            if not (_has_trigger(text[s_start:s_end], lexicon.trigger_words)
                    or _version_follows(text, end, s_end)):
                continue
        raw.setdefault(idx, []).append((start, end))

    accepted = []
    for idx, occurrences in raw.items():
        occurrences.sort()
        last_end = -1
        for start, end in occurrences:
            if start >= last_end:
                accepted.append((idx, start, end))
                last_end = end
    return accepted


def find_mentions(pub, lexicon: Lexicon) -> list[Mention]:
    """All catalog mentions in one publication, ordered by (field, span)."""
    mentions = []
    for field_name, text in ((FIELD_TITLE, pub.title), (FIELD_ABSTRACT, pub.abstract_text)):
        for idx, start, end in scan_field(text, lexicon):
            mentions.append(Mention(pub_id=pub.pub_id,
                                    sw_id=lexicon.entries[idx].sw_id,
                                    field=field_name, start=start, end=end))
    mentions.sort(key=lambda m: (_FIELD_ORDER[m.field], m.start, m.end, m.sw_id))
    return mentions


class MentionIndex:
    """Bidirectional software <-> publication index (exact transposes)."""

    def __init__(self, pairs):
        by_software: dict[str, set[str]] = {}
        by_publication: dict[str, set[str]] = {}
        for sw_id, pub_id in pairs:
            by_software.setdefault(sw_id, set()).add(pub_id)
            by_publication.setdefault(pub_id, set()).add(sw_id)
        self.by_software = {k: frozenset(v) for k, v in by_software.items()}
        self.by_publication = {k: frozenset(v) for k, v in by_publication.items()}

    def pairs(self) -> set[tuple[str, str]]:
        return {(sw, pub) for sw, pubs in self.by_software.items() for pub in pubs}

    def publications_of(self, sw_id: str) -> frozenset[str]:
        return self.by_software.get(sw_id, frozenset())

    def software_of(self, pub_id: str) -> frozenset[str]:
        return self.by_publication.get(pub_id, frozenset())

    def is_transpose_consistent(self) -> bool:
        forward = self.pairs()
        backward = {(sw, pub) for pub, sws in self.by_publication.items() for sw in sws}
        return forward == backward


def find_all_mentions(corpus: Corpus, lexicon: Lexicon) -> list[Mention]:
    mentions = []
    for pub in corpus:
        mentions.extend(find_mentions(pub, lexicon))
    return mentions


def build_mention_index(corpus: Corpus, lexicon: Lexicon) -> MentionIndex:
    return MentionIndex((m.sw_id, m.pub_id) for m in find_all_mentions(corpus, lexicon))


def write_mention_dump(mentions: list[Mention], path) -> None:
    """One mention per line: `pub_id sw_id field start end`, tab-separated."""
    with open(path, "w", encoding="utf-8") as fh:
        for m in mentions:
            fh.write(f"{m.pub_id}\t{m.sw_id}\t{m.field}\t{m.start}\t{m.end}\n")
