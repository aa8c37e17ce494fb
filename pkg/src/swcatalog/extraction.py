"""Heuristic software-name extraction from publication titles.

Titles are mined with four pattern rules. Each rule that fires
contributes a fixed weight to the hit score of a surface form; hits for
the same normalized name are then aggregated across the corpus with a
noisy-or, so repeated independent sightings raise confidence without
ever exceeding 1. The scored candidate list is a worklist for manual
curation, not a final catalog.

Rules (weights are configurable):

    R1_ColonPattern    "<NamePhrase>: ..." / "<NamePhrase> - ..." title
                       openings, 1-3 leading word tokens with a namey
                       head, and a trigger word somewhere after the
                       separator.
    R2_TriggerAdjacency  a namey token with at most 3 word tokens
                       between it and a trigger word.
    R3_VersionSuffix   a namey token followed by a version token
                       (only trigger words may sit in between, so
                       "NAME solver 4.0" still counts).
    R4_DefinitePhrase  the literal shape "the <Namey> <trigger>".

A token is "namey" when it looks artificial: all-caps, mixed internal
capitalization, letters mixed with digits, or a capitalized word that is
neither sentence-initial nor in the common-word list. Trigger words are
never namey.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from .ingest import assign_persistent_id
from .records import SoftwareRecord, normalize_name
from .wordlist import default_common_words, load_word_file


class RuleId(enum.Enum):
    R1_ColonPattern = "R1_ColonPattern"
    R2_TriggerAdjacency = "R2_TriggerAdjacency"
    R3_VersionSuffix = "R3_VersionSuffix"
    R4_DefinitePhrase = "R4_DefinitePhrase"


DEFAULT_TRIGGER_WORDS = frozenset({
    "software", "package", "packages", "solver", "solvers",
    "library", "libraries", "toolbox", "program", "system",
    "code", "tool", "tools",
})

DEFAULT_RULE_WEIGHTS = {
    RuleId.R1_ColonPattern: 0.5,
    RuleId.R2_TriggerAdjacency: 0.25,
    RuleId.R3_VersionSuffix: 0.15,
    RuleId.R4_DefinitePhrase: 0.1,
}

# At most this many word tokens between a namey token and a trigger for R2.
TRIGGER_WINDOW = 3

VERSION_TOKEN_RE = re.compile(r"^[vV]?[0-9]+(?:\.[0-9]+)*$")

PHRASE_SEPARATORS = {":", "-", "–", "—"}


@dataclass(frozen=True)
class RuleConfig:
    trigger_words: frozenset[str] = DEFAULT_TRIGGER_WORDS
    weights: dict = field(default_factory=lambda: dict(DEFAULT_RULE_WEIGHTS))
    common_words: frozenset[str] = field(default_factory=default_common_words)


def load_rule_config(path) -> RuleConfig:
    """Read a JSON rule-config file (trigger words, weights, word-list path)."""
    import json

    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    triggers = frozenset(w.lower() for w in data.get("trigger_words", DEFAULT_TRIGGER_WORDS))
    weights = dict(DEFAULT_RULE_WEIGHTS)
    for key, value in data.get("rule_weights", {}).items():
        weights[RuleId(key)] = float(value)
    if "common_words_path" in data:
        words = load_word_file(data["common_words_path"])
    else:
        words = default_common_words()
    return RuleConfig(trigger_words=triggers, weights=weights, common_words=words)


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int
    is_word: bool
    sentence_initial: bool = False


@dataclass(frozen=True)
class CandidateHit:
    surface: str
    pub_id: str
    rules: frozenset[RuleId]
    hit_score: float


@dataclass
class SoftwareCandidate:
    normalized_name: str
    surfaces: frozenset[str]
    evidence: frozenset[str]
    score: float
    status: str = "Pending"


def tokenize_title(title: str) -> list[Token]:
    """Split a title into word and delimiter tokens with original spans.

    Whitespace separates chunks; leading and trailing punctuation of a
    chunk becomes one delimiter token per character, while internal
    punctuation stays inside the word ("deal.II" survives intact). The
    first word token carries the sentence-initial flag.
    """
    tokens: list[Token] = []
    saw_word = False
    for match in re.finditer(r"\S+", title):
        chunk, base = match.group(), match.start()
        left, right = 0, len(chunk)
        while left < right and not chunk[left].isalnum():
            left += 1
        while right > left and not chunk[right - 1].isalnum():
            right -= 1
        for k in range(left):
            tokens.append(Token(chunk[k], base + k, base + k + 1, is_word=False))
        if left < right:
            tokens.append(Token(chunk[left:right], base + left, base + right,
                                is_word=True, sentence_initial=not saw_word))
            saw_word = True
        for k in range(right, len(chunk)):
            tokens.append(Token(chunk[k], base + k, base + k + 1, is_word=False))
    return tokens


def is_namey(token: str, sentence_initial: bool, common_words, triggers) -> bool:
    """Does this word token look like an artificial (software-like) name?"""
    if not token or token.lower() in triggers:
        return False
    has_letter = any(c.isalpha() for c in token)
    has_lower = any(c.islower() for c in token)
    has_digit = any(c.isdigit() for c in token)
    # (a) all-caps, length >= 2, digits allowed
    if len(token) >= 2 and has_letter and not has_lower:
        return True
    # (b) capitalization after the first character
    if has_lower and any(c.isupper() for c in token[1:]):
        return True
    # (c) letters and digits mixed
    if has_letter and has_digit:
        return True
    # (d) capitalized non-dictionary word away from the sentence start
    if (len(token) >= 2 and token[0].isupper() and token[1:].islower()
            and not sentence_initial and token.lower() not in common_words):
        return True
    return False


def extract_candidates(title: str, pub_id: str, config: RuleConfig | None = None) -> list[CandidateHit]:
    """Apply the four title rules; one hit per distinct surface that fires."""
    config = config or RuleConfig()
    tokens = tokenize_title(title)
    word_pos = [i for i, t in enumerate(tokens) if t.is_word]
    words = [tokens[i] for i in word_pos]

    namey = [
        is_namey(w.text, w.sentence_initial, config.common_words, config.trigger_words)
        for w in words
    ]
    trigger = [w.text.lower() in config.trigger_words for w in words]

    # surface -> (rules fired, first-seen character start)
    fired: dict[str, set[RuleId]] = {}
    first_seen: dict[str, int] = {}

    def fire(surface: str, start: int, rule: RuleId) -> None:
        fired.setdefault(surface, set()).add(rule)
        first_seen.setdefault(surface, start)

    # R1: leading 1-3 word phrase, namey head, colon/dash, trigger after it
    phrase: list[Token] = []
    for tok in tokens:
        if tok.is_word:
            phrase.append(tok)
            if len(phrase) > 3:
                break
        else:
            if tok.text in PHRASE_SEPARATORS and 1 <= len(phrase) <= 3:
                head = phrase[0]
                rest = [w for w in words if w.start > tok.end]
                if (is_namey(head.text, head.sentence_initial,
                             config.common_words, config.trigger_words)
                        and any(w.text.lower() in config.trigger_words for w in rest)):
                    surface = title[phrase[0].start:phrase[-1].end]
                    fire(surface, phrase[0].start, RuleId.R1_ColonPattern)
            break

    for i, word in enumerate(words):
        if not namey[i]:
            continue
        # R2: trigger within the adjacency window (word tokens in between)
        for j, is_trig in enumerate(trigger):
            if is_trig and abs(i - j) - 1 <= TRIGGER_WINDOW:
                fire(word.text, word.start, RuleId.R2_TriggerAdjacency)
                break
        # R3: version token follows, possibly through trigger words
        pos = word_pos[i] + 1
        while pos < len(tokens):
            nxt = tokens[pos]
            if not nxt.is_word:
                break
            if nxt.text.lower() in config.trigger_words:
                pos += 1
                continue
            if VERSION_TOKEN_RE.match(nxt.text):
                fire(word.text, word.start, RuleId.R3_VersionSuffix)
            break
        # R4: "the <Namey> <trigger>" as consecutive tokens
        base = word_pos[i]
        if base >= 1 and base + 1 < len(tokens):
            prev, nxt = tokens[base - 1], tokens[base + 1]
            if (prev.is_word and prev.text.lower() == "the"
                    and nxt.is_word and nxt.text.lower() in config.trigger_words):
                fire(word.text, word.start, RuleId.R4_DefinitePhrase)

    hits = []
    for surface, rules in fired.items():
        score = min(1.0, sum(config.weights[r] for r in rules))
        hits.append(CandidateHit(surface=surface, pub_id=pub_id,
                                 rules=frozenset(rules), hit_score=score))
    hits.sort(key=lambda h: (first_seen[h.surface], h.surface))
    return hits


def extract_corpus(corpus, config: RuleConfig | None = None) -> list[CandidateHit]:
    """Run extract_candidates over every publication title."""
    config = config or RuleConfig()
    hits: list[CandidateHit] = []
    for pub in corpus:
        hits.extend(extract_candidates(pub.title, pub.pub_id, config))
    return hits


def merge_candidates(hits) -> list[SoftwareCandidate]:
    """Aggregate hits by normalized name with noisy-or scoring.

    The result does not depend on the order of the input hits: factors
    are multiplied in a canonical order before the complement is taken.
    """
    groups: dict[str, list[CandidateHit]] = {}
    for hit in hits:
        key = normalize_name(hit.surface)
        groups.setdefault(key, []).append(hit)

    candidates = []
    for name, group in groups.items():
        group.sort(key=lambda h: (h.hit_score, h.pub_id, h.surface))
        miss = 1.0
        for hit in group:
            miss *= 1.0 - hit.hit_score
        candidates.append(SoftwareCandidate(
            normalized_name=name,
            surfaces=frozenset(h.surface for h in group),
            evidence=frozenset(h.pub_id for h in group),
            score=1.0 - miss,
        ))
    candidates.sort(key=lambda c: (-c.score, c.normalized_name))
    return candidates


@dataclass
class CurationResult:
    accepted: list[SoftwareRecord]
    rejected: list[SoftwareCandidate]
    pending: list[SoftwareCandidate]
    warnings: list[str]


def load_curation_file(path) -> dict[str, tuple[str, str | None]]:
    """Parse curation decisions: `name<TAB>accept|reject<TAB>canonical`."""
    decisions: dict[str, tuple[str, str | None]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) < 2 or parts[1] not in ("accept", "reject"):
                raise ValueError(f"{path}: line {line_no}: expected "
                                 f"`name<TAB>accept|reject[<TAB>canonical]`")
            name, verdict = parts[0], parts[1]
            canonical = parts[2] if len(parts) > 2 and parts[2] else None
            if verdict == "accept" and canonical is None:
                raise ValueError(f"{path}: line {line_no}: accept requires a canonical name")
            decisions[normalize_name(name)] = (verdict, canonical)
    return decisions


def apply_curation(candidates: list[SoftwareCandidate],
                   decisions: dict[str, tuple[str, str | None]],
                   existing_ids: set[str] | None = None) -> CurationResult:
    """Turn accepted candidates into catalog records; everything else stays out.

    Decisions that match no candidate are reported as warnings and ignored.
    Ids are assigned in worklist order (score descending, name ascending),
    so repeated runs produce identical catalogs.
    """
    ids = set(existing_ids or ())
    ordered = sorted(candidates, key=lambda c: (-c.score, c.normalized_name))
    accepted, rejected, pending = [], [], []
    matched = set()

    for cand in ordered:
        decision = decisions.get(cand.normalized_name)
        if decision is None:
            pending.append(cand)
            continue
        matched.add(cand.normalized_name)
        verdict, canonical = decision
        if verdict == "reject":
            cand.status = "Rejected"
            rejected.append(cand)
            continue
        cand.status = "Accepted"
        sw_id = assign_persistent_id(canonical, ids)
        ids.add(sw_id)
        aliases = tuple(sorted(cand.surfaces - {canonical}))
        accepted.append(SoftwareRecord(sw_id=sw_id, name=canonical, aliases=aliases,
                                       provenance="PublicationDerived"))

    warnings = [f"no candidate named {name!r}" for name in sorted(set(decisions) - matched)]
    return CurationResult(accepted=accepted, rejected=rejected,
                          pending=pending, warnings=warnings)


def write_worklist(candidates: list[SoftwareCandidate], path) -> None:
    """Curation worklist: `name<TAB>score<TAB>evidence_count<TAB>surfaces`."""
    with open(path, "w", encoding="utf-8") as fh:
        for cand in candidates:
            surfaces = "|".join(sorted(cand.surfaces))
            fh.write(f"{cand.normalized_name}\t{cand.score:.6f}\t"
                     f"{len(cand.evidence)}\t{surfaces}\n")
