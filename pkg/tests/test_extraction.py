import random

import pytest
from hypothesis import given, settings, strategies as st

from swcatalog.extraction import (
    CandidateHit,
    RuleConfig,
    RuleId,
    apply_curation,
    extract_candidates,
    is_namey,
    load_curation_file,
    merge_candidates,
    tokenize_title,
)
from swcatalog.records import EmptySlug
from swcatalog.wordlist import default_common_words

CONFIG = RuleConfig()
WORDS = default_common_words()
TRIGGERS = CONFIG.trigger_words


# --- tokenizer ---------------------------------------------------------------

def test_tokenizer_colon_title():
    tokens = tokenize_title("SINGULAR: a computer algebra system")
    assert [t.text for t in tokens] == ["SINGULAR", ":", "a", "computer",
                                        "algebra", "system"]
    assert tokens[0].is_word and not tokens[1].is_word
    assert tokens[0].sentence_initial
    assert not any(t.sentence_initial for t in tokens[1:])


def test_tokenizer_empty():
    assert tokenize_title("") == []


def test_tokenizer_internal_punctuation_kept():
    tokens = tokenize_title("Solving PDEs with deal.II")
    assert [t.text for t in tokens if t.is_word] == ["Solving", "PDEs", "with", "deal.II"]


def test_tokenizer_spans_match_source():
    title = "The (PARDISO) solver, 4.0!"
    for token in tokenize_title(title):
        assert title[token.start:token.end] == token.text


def test_tokenizer_edge_punctuation_split():
    tokens = tokenize_title('"(X)..."')
    texts = [t.text for t in tokens]
    assert texts == ['"', "(", "X", ")", ".", ".", ".", '"']


# --- nameyness ---------------------------------------------------------------

@pytest.mark.parametrize("token,initial,expected", [
    ("SINGULAR", True, True),     # all caps
    ("software", False, False),   # trigger word, never namey
    ("Software", True, False),    # trigger in any case
    ("MuPAD", False, True),       # internal capitals
    ("deal.II", False, True),     # internal capitals after punctuation
    ("Macaulay2", False, True),   # letters + digits
    ("4.0", False, False),        # digits only
    ("Maple", False, False),      # capitalized dictionary word
    ("Trilinos", False, True),    # capitalized non-dictionary word
    ("Trilinos", True, False),    # ...but not sentence-initial
    ("Solving", False, False),    # dictionary word
    ("PDEs", False, True),        # mixed caps
    ("X", False, False),          # too short for the all-caps rule
])
def test_is_namey(token, initial, expected):
    assert is_namey(token, initial, WORDS, TRIGGERS) is expected


# --- rule table --------------------------------------------------------------

def hits_for(title):
    return {h.surface: h for h in extract_candidates(title, "p1", CONFIG)}


def test_colon_pattern_example():
    hits = hits_for("SINGULAR: a computer algebra system for polynomial computations")
    hit = hits["SINGULAR"]
    assert hit.rules == {RuleId.R1_ColonPattern, RuleId.R2_TriggerAdjacency}
    assert hit.hit_score == pytest.approx(0.75)


def test_version_and_definite_example():
    hits = hits_for("The PARDISO solver 4.0 on shared memory machines")
    hit = hits["PARDISO"]
    assert hit.rules == {RuleId.R2_TriggerAdjacency, RuleId.R3_VersionSuffix,
                         RuleId.R4_DefinitePhrase}
    assert hit.hit_score == pytest.approx(0.5)


def test_no_trigger_no_hits():
    assert extract_candidates("On the convergence of gradient descent", "p1", CONFIG) == []


def test_namey_without_trigger_no_hits():
    assert extract_candidates("HECKE and the arithmetic of modular curves", "p1", CONFIG) == []


def test_dash_variant_of_colon_rule():
    hits = hits_for("NORMALIZ - a tool for affine monoids")
    assert RuleId.R1_ColonPattern in hits["NORMALIZ"].rules


def test_colon_rule_needs_trigger_after_separator():
    assert "KANT" not in hits_for("KANT: an approach to pure reason")


def test_colon_rule_phrase_limit():
    # four leading word tokens: no R1
    hits = hits_for("ABC DEF GHI JKL: a solver for everything")
    assert all(RuleId.R1_ColonPattern not in h.rules for h in hits.values())


def test_multi_token_phrase_surface():
    hits = hits_for("FEniCS Studio: a toolbox for variational forms")
    assert "FEniCS Studio" in hits
    assert RuleId.R1_ColonPattern in hits["FEniCS Studio"].rules
    # the head token alone also fires the adjacency rule
    assert "FEniCS" in hits
    assert RuleId.R2_TriggerAdjacency in hits["FEniCS"].rules


def test_version_suffix_direct_adjacency():
    hits = hits_for("Running FLINT 2.5 overnight unattended today")
    assert hits["FLINT"].rules == {RuleId.R3_VersionSuffix}


def test_version_suffix_blocked_by_non_trigger():
    hits = hits_for("Running FLINT overnight 2.5 units of time")
    assert "FLINT" not in hits or RuleId.R3_VersionSuffix not in hits["FLINT"].rules


def test_trigger_window_limit():
    # namey token four word-tokens away from the trigger: outside the window
    hits = hits_for("HECKE and all the other valuable library ideas")
    assert "HECKE" not in hits


def test_duplicate_surface_single_hit():
    hits = extract_candidates(
        "MAGNUS and MAGNUS examples in the MAGNUS package", "p1", CONFIG)
    assert len([h for h in hits if h.surface == "MAGNUS"]) == 1


def test_determinism():
    title = "The PARDISO solver 4.0 on shared memory machines"
    assert extract_candidates(title, "p", CONFIG) == extract_candidates(title, "p", CONFIG)


TITLE_WORDS = st.sampled_from([
    "SINGULAR", "Maple", "MuPAD", "solver", "package", "system", "the", "a",
    "of", "with", "for", "analysis", "4.0", "v2.1", "deal.II", "GAP4",
    "polynomial", "Trilinos", "-", ":", "library", "Solving", "PDEs",
])


@given(st.lists(TITLE_WORDS, min_size=0, max_size=12))
@settings(max_examples=150, deadline=None)
def test_extraction_properties(words):
    title = " ".join(words)
    hits = extract_candidates(title, "p1", CONFIG)
    assert hits == extract_candidates(title, "p1", CONFIG)
    for hit in hits:
        assert 0.0 < hit.hit_score <= 1.0
        assert hit.rules
        assert hit.surface.lower() not in CONFIG.trigger_words


# --- merging -----------------------------------------------------------------

def hit(surface, pub_id, score, rules=frozenset({RuleId.R2_TriggerAdjacency})):
    return CandidateHit(surface=surface, pub_id=pub_id, rules=rules, hit_score=score)


def test_noisy_or_example():
    merged = merge_candidates([hit("SINGULAR", "p1", 0.75), hit("SINGULAR", "p2", 0.5)])
    assert len(merged) == 1
    assert merged[0].score == pytest.approx(0.875)  # 1 - 0.25 * 0.5
    assert merged[0].evidence == {"p1", "p2"}


def test_noisy_or_single_hit_identity():
    merged = merge_candidates([hit("X1", "p1", 0.3)])
    assert merged[0].score == pytest.approx(0.3)
    assert merged[0].status == "Pending"


def test_case_variants_merge():
    merged = merge_candidates([hit("Matlab", "p1", 0.4), hit("MATLAB", "p2", 0.4)])
    assert len(merged) == 1
    assert merged[0].surfaces == {"Matlab", "MATLAB"}


def test_merge_sorted_and_tie_broken():
    merged = merge_candidates([hit("BBB", "p1", 0.5), hit("AAA", "p2", 0.5),
                               hit("CCC", "p3", 0.9)])
    assert [c.normalized_name for c in merged] == ["ccc", "aaa", "bbb"]


def test_merge_order_independent():
    hits = [hit("X1", f"p{i}", 0.1 + 0.07 * (i % 9)) for i in range(30)]
    base = merge_candidates(hits)
    for seed in range(5):
        shuffled = hits[:]
        random.Random(seed).shuffle(shuffled)
        again = merge_candidates(shuffled)
        assert again == base  # bit-identical scores, not just approx


@given(st.lists(st.floats(min_value=0.01, max_value=1.0), min_size=1, max_size=8),
       st.floats(min_value=0.01, max_value=1.0))
def test_noisy_or_monotone(scores, extra):
    hits = [hit("X1", f"p{i}", s) for i, s in enumerate(scores)]
    before = merge_candidates(hits)[0].score
    after = merge_candidates(hits + [hit("X1", "pz", extra)])[0].score
    assert after >= before - 1e-15
    assert 0.0 < after <= 1.0


# --- curation ----------------------------------------------------------------

def test_apply_curation_paths():
    candidates = merge_candidates([
        hit("singular", "p1", 0.8), hit("Junk", "p2", 0.2), hit("Limbo", "p3", 0.4),
    ])
    decisions = {"singular": ("accept", "SINGULAR"), "junk": ("reject", None),
                 "ghost": ("accept", "Ghost")}
    result = apply_curation(candidates, decisions)
    assert [r.name for r in result.accepted] == ["SINGULAR"]
    assert result.accepted[0].sw_id == "swm:singular"
    assert result.accepted[0].provenance == "PublicationDerived"
    assert [c.normalized_name for c in result.rejected] == ["junk"]
    assert [c.normalized_name for c in result.pending] == ["limbo"]
    assert result.warnings == ["no candidate named 'ghost'"]


def test_apply_curation_surfaces_become_aliases():
    candidates = merge_candidates([hit("Matlab", "p1", 0.4), hit("MATLAB", "p2", 0.4)])
    result = apply_curation(candidates, {"matlab": ("accept", "MATLAB")})
    assert result.accepted[0].aliases == ("Matlab",)


def test_apply_curation_empty_slug_surfaces():
    candidates = merge_candidates([hit("X1", "p1", 0.5)])
    with pytest.raises(EmptySlug):
        apply_curation(candidates, {"x1": ("accept", "+++")})


def test_curation_file_round_trip(tmp_path):
    path = tmp_path / "cur.tsv"
    path.write_text("singular\taccept\tSINGULAR\njunk\treject\n", encoding="utf-8")
    decisions = load_curation_file(path)
    assert decisions == {"singular": ("accept", "SINGULAR"), "junk": ("reject", None)}


def test_curation_file_errors(tmp_path):
    path = tmp_path / "cur.tsv"
    path.write_text("name\tmaybe\n", encoding="utf-8")
    with pytest.raises(ValueError, match="accept|reject"):
        load_curation_file(path)
    path.write_text("name\taccept\n", encoding="utf-8")
    with pytest.raises(ValueError, match="canonical"):
        load_curation_file(path)
