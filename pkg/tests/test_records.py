import datetime

import pytest

from swcatalog.records import (
    MSC_CODE_RE,
    PortalRecord,
    PublicationRecord,
    SoftwareRecord,
    normalize_name,
)


def make_pub(**overrides):
    data = {
        "pub_id": "p1",
        "title": "A title",
        "abstract_text": "",
        "keywords": [],
        "msc_codes": [],
        "year": 2010,
        "authors": [],
        "peer_reviewed": False,
        "source": "Reviewed",
    }
    data.update(overrides)
    return PublicationRecord.from_mapping(data)


# Hand-applied MSC grammar: DD L DD | DD L xx | DD-XX
@pytest.mark.parametrize("code", ["13P10", "65Fxx", "68-XX", "00A05", "13Pxx"])
def test_msc_grammar_accepts(code):
    assert MSC_CODE_RE.match(code)


@pytest.mark.parametrize("code", [
    "13p10",   # lowercase letter
    "68-xx",   # wildcard section must be -XX
    "13PXX",   # letter form takes lowercase xx
    "5P10",    # one leading digit
    "13P1",    # truncated
    "13P100",  # too long
    "",
])
def test_msc_grammar_rejects(code):
    assert not MSC_CODE_RE.match(code)


def test_msc_codes_validated_on_load():
    assert make_pub(msc_codes=["13P10"]).msc_codes == ("13P10",)
    with pytest.raises(ValueError, match="MSC grammar"):
        make_pub(msc_codes=["13p10"])


def test_year_bounds():
    assert make_pub(year=1800).year == 1800
    next_year = datetime.date.today().year + 1
    assert make_pub(year=next_year).year == next_year
    with pytest.raises(ValueError, match="year out of range"):
        make_pub(year=1700)
    with pytest.raises(ValueError, match="year out of range"):
        make_pub(year=next_year + 1)
    with pytest.raises(ValueError, match="integer required"):
        make_pub(year="2010")


def test_keywords_trimmed_unique():
    pub = make_pub(keywords=["Groebner bases", "Groebner bases", "ideal"])
    assert pub.keywords == ("Groebner bases", "ideal")
    with pytest.raises(ValueError, match="empty after trimming"):
        make_pub(keywords=["   "])


def test_unknown_fields_rejected():
    with pytest.raises(ValueError, match="unknown field"):
        make_pub(extra="nope")


def test_source_enum():
    for source in ("Reviewed", "Proceedings", "Report"):
        assert make_pub(source=source).source == source
    with pytest.raises(ValueError, match="source"):
        make_pub(source="Blog")


def test_publication_round_trip_mapping():
    pub = make_pub(keywords=["a", "b"], msc_codes=["13P10"], authors=["X. Y"],
                   peer_reviewed=True)
    assert PublicationRecord.from_mapping(pub.to_mapping()) == pub


def test_software_record_invariants():
    rec = SoftwareRecord(sw_id="swm:singular", name="SINGULAR", aliases=("Singular",))
    assert rec.name == "SINGULAR"
    with pytest.raises(ValueError, match="persistent id"):
        SoftwareRecord(sw_id="singular", name="SINGULAR")
    with pytest.raises(ValueError, match="non-empty"):
        SoftwareRecord(sw_id="swm:x", name="   ")
    with pytest.raises(ValueError, match="aliases"):
        SoftwareRecord(sw_id="swm:x", name="X", aliases=("X",))
    with pytest.raises(ValueError, match="provenance"):
        SoftwareRecord(sw_id="swm:x", name="X", provenance="Rumor")


def test_software_record_round_trip():
    rec = SoftwareRecord(sw_id="swm:x", name="X", homepage="https://example.org/x",
                         version="2.0", license="GPL",
                         programming_languages=("C",), dependencies=("swm:y",),
                         provenance="PortalListed")
    again = SoftwareRecord.from_mapping(rec.to_mapping())
    assert again == rec
    # absent optionals stay absent in the mapping
    bare = SoftwareRecord(sw_id="swm:y", name="Y").to_mapping()
    assert "homepage" not in bare and "version" not in bare and "license" not in bare


def test_portal_record_requires_names():
    with pytest.raises(ValueError):
        PortalRecord(portal_name="", software_name="X")
    with pytest.raises(ValueError):
        PortalRecord(portal_name="P", software_name=" ")


def test_normalize_name():
    assert normalize_name("  SINGULAR  ") == "singular"
    assert normalize_name("Gröbner   Tool") == "grobner tool"
    assert normalize_name("deal.II") == "deal.ii"
    assert normalize_name("FEniCS  Studio") == "fenics studio"
