"""Seeded synthetic corpus generator.

Builds a self-contained demo dataset: 200 publications of which 150
carry 25 planted software names in rule-conforming titles (6 pubs per
name) and 50 are distractors. Alongside the corpus it writes portal
records, a curation decision file, and a manifest with the ground truth
(planted names, expected reference counts, intentional junk candidates)
that the test suite checks extraction and profile arithmetic against.

The same seed always produces byte-identical files.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from .ingest import write_corpus, write_portal_records
from .records import Corpus, PortalRecord, PublicationRecord, normalize_name

DEFAULT_SEED = 42

AUTHOR_POOL = [
    "G. Steiner", "M. Okafor", "L. Petrova", "F. Delgado", "H. Yamazaki",
    "R. Novak", "A. Lindqvist", "T. Mbeki", "C. Fontaine", "P. Aurelio",
    "K. Varga", "S. Duran", "E. Tanaka", "B. Kovacs", "N. Oduya",
    "D. Castellano", "J. Farrelly", "V. Marchetti",
]


@dataclass(frozen=True)
class Cluster:
    key: str
    msc_codes: tuple[str, ...]
    keywords: tuple[str, ...]
    trigger: str
    generic_titles: tuple[str, ...]


CLUSTERS = {
    "commutative": Cluster(
        key="commutative",
        msc_codes=("13P10", "13A50", "14Q05", "13D02", "13H10"),
        keywords=("Groebner bases", "polynomial ideals", "primary decomposition",
                  "syzygies", "free resolutions"),
        trigger="system",
        generic_titles=(
            "Computing primary decompositions of polynomial ideals",
            "On the complexity of syzygy computations",
            "Free resolutions over toric rings",
            "A note on monomial ideal invariants",
            "Effective methods for radical computations",
        ),
    ),
    "numerical": Cluster(
        key="numerical",
        msc_codes=("65F10", "65N30", "65Y05", "35J25", "65F50"),
        keywords=("sparse linear systems", "finite elements", "preconditioning",
                  "parallel computing", "multigrid methods"),
        trigger="library",
        generic_titles=(
            "Convergence of multigrid cycles for anisotropic problems",
            "A posteriori error estimation on adaptive meshes",
            "Scalability of distributed sparse factorizations",
            "Robust smoothers for convection dominated flows",
            "Mixed finite element discretizations revisited",
        ),
    ),
    "numbertheory": Cluster(
        key="numbertheory",
        msc_codes=("11Y16", "11A41", "11M06", "11B83", "11Y11"),
        keywords=("prime numbers", "modular forms", "L-functions",
                  "integer factorization", "elliptic curves"),
        trigger="package",
        generic_titles=(
            "Counting primes in short intervals",
            "Explicit bounds for character sums",
            "On the distribution of quadratic residues",
            "Heights of rational points on elliptic curves",
            "Average ranks in families of quadratic twists",
        ),
    ),
    "symbolic": Cluster(
        key="symbolic",
        msc_codes=("68W30", "33F10", "68Q40"),
        keywords=("symbolic computation", "special functions", "summation identities",
                  "computer algebra", "generating functions"),
        trigger="system",
        generic_titles=(
            "Closed forms for hypergeometric sums",
            "Creative telescoping in several variables",
            "Asymptotics of holonomic sequences",
            "Certified evaluation of special functions",
            "Recurrences for combinatorial families",
        ),
    ),
    "optimization": Cluster(
        key="optimization",
        msc_codes=("90C15", "05C85", "90C05", "65K05"),
        keywords=("stochastic programming", "graph algorithms", "linear programming",
                  "tensor decompositions", "signal processing"),
        trigger="tool",
        generic_titles=(
            "Sample average approximation under heavy tails",
            "Cut generation for two stage recourse models",
            "Streaming partitioning of massive graphs",
            "Alternating schemes for low rank recovery",
            "Duality gaps in nonconvex quadratic problems",
        ),
    ),
}


@dataclass(frozen=True)
class PlantedName:
    name: str
    cluster: str
    signature_title: str
    followup_title: str


PLANTED: tuple[PlantedName, ...] = (
    PlantedName("SINGULAR", "commutative",
                "SINGULAR: a computer algebra system for polynomial computations",
                "Applications of the SINGULAR system in invariant theory"),
    PlantedName("CoCoA", "commutative",
                "CoCoA: a system for computations in commutative algebra",
                "Applications of the CoCoA system to border bases"),
    PlantedName("Macaulay2", "commutative",
                "Computing syzygies with the Macaulay2 software",
                "Applications of the Macaulay2 software to graded modules"),
    PlantedName("NORMALIZ", "commutative",
                "NORMALIZ - a tool for affine monoids",
                "Applications of the NORMALIZ tool to lattice polytopes"),
    PlantedName("Grobnerix", "commutative",
                "The Grobnerix solver for polynomial systems",
                "Applications of the Grobnerix solver to elimination theory"),
    PlantedName("PARDISO", "numerical",
                "The PARDISO solver 4.0 on shared memory machines",
                "Applications of the PARDISO solver to circuit simulation"),
    PlantedName("PETSc", "numerical",
                "Scalable preconditioning with the PETSc toolbox",
                "Applications of the PETSc toolbox to reservoir models"),
    PlantedName("Trilinos", "numerical",
                "Large sparse systems in the Trilinos package",
                "Applications of the Trilinos package to multiphysics coupling"),
    PlantedName("deal.II", "numerical",
                "Adaptive finite elements in the deal.II library",
                "Applications of the deal.II library to phase field models"),
    PlantedName("FEM3D", "numerical",
                "FEM3D 2.1 and finite element meshing",
                "Applications of the FEM3D code to elasticity benchmarks"),
    PlantedName("FLINT", "numbertheory",
                "Fast number theory with the FLINT library",
                "Applications of the FLINT library to polynomial factorization"),
    PlantedName("HECKE", "numbertheory",
                "HECKE: modular forms package for weight computations",
                "Applications of the HECKE package to eigenforms"),
    PlantedName("PrimeTrack", "numbertheory",
                "Prime gap statistics with the PrimeTrack tool",
                "Applications of the PrimeTrack tool to sieve experiments"),
    PlantedName("Fermatica", "numbertheory",
                "Primality certificates from the Fermatica program",
                "Applications of the Fermatica program to pseudoprimes"),
    PlantedName("Modulo7", "numbertheory",
                "Residue arithmetic in the Modulo7 code",
                "Applications of the Modulo7 code to congruence solving"),
    PlantedName("MuPAD", "symbolic",
                "MuPAD: a package for symbolic summation",
                "Applications of the MuPAD package to q-series"),
    PlantedName("ZetaFold", "symbolic",
                "Evaluating zeta functions in the ZetaFold system",
                "Applications of the ZetaFold system to analytic continuation"),
    PlantedName("Eulerium", "symbolic",
                "Summation identities in the Eulerium package",
                "Applications of the Eulerium package to harmonic sums"),
    PlantedName("MatSolve", "symbolic",
                "MatSolve: a library for structured linear systems",
                "Applications of the MatSolve library to structured inversion"),
    PlantedName("FEniCS Studio", "symbolic",
                "FEniCS Studio: a toolbox for variational forms",
                "Applications of the FEniCS Studio toolbox to weak formulations"),
    PlantedName("Simplexa", "optimization",
                "The Simplexa program for linear optimization",
                "Applications of the Simplexa program to transport problems"),
    PlantedName("StochOpt", "optimization",
                "StochOpt: a solver for stochastic programs",
                "Applications of the StochOpt solver to energy markets"),
    PlantedName("GraphMinder", "optimization",
                "Community detection with the GraphMinder toolbox",
                "Applications of the GraphMinder toolbox to citation networks"),
    PlantedName("TensorForge", "optimization",
                "Low rank approximations using the TensorForge library",
                "Applications of the TensorForge library to completion problems"),
    PlantedName("WaveletKit", "optimization",
                "Signal analysis with the WaveletKit toolbox",
                "Applications of the WaveletKit toolbox to denoising",),
)

# The only software whose references are all technical reports; it must
# receive no cross-mentions so the quality filter keeps rejecting it.
REPORT_ONLY = "StochOpt"
PORTAL_ONLY = "OrbitKit"

# Junk surfaces the extractor is expected to emit on this corpus; the
# curation file rejects them.
EXPECTED_JUNK = ("fenics", "gpu", "hpc")

SOURCE_CYCLE = ("Reviewed", "Reviewed", "Proceedings", "Reviewed", "Report", "Reviewed")

NEUTRAL_DISTRACTOR_TITLES = (
    "On the convergence of gradient descent",
    "A survey of modern software verification practice",
    "Regularity of weak solutions revisited",
    "Spectral gaps of random regular graphs",
    "Entropy methods for kinetic equations",
    "A combinatorial proof of the hook length formula",
    "Rigidity of isometric embeddings",
    "Mixing times for card shuffling chains",
    "Optimal transport with congestion costs",
    "Tame topology and o-minimal structures",
    "Equidistribution of Galois orbits",
    "Concentration inequalities for empirical processes",
    "Homogenization of perforated domains",
    "Sharp interface limits of diffuse models",
    "A pathwise approach to rough differential equations",
    "Random matrix statistics in number fields",
    "Percolation thresholds on planar lattices",
    "Metastability in stochastic lattice models",
    "Variational principles for eigenvalue problems",
    "An elementary bound for exponential sums",
    "The geometry of moment maps",
    "Stable reduction of plane curves",
    "Quantitative unique continuation estimates",
    "Long time behaviour of dispersive waves",
    "Arithmetic of function fields in positive characteristic",
    "Moduli of stable vector bundles",
    "Nonlocal minimal surfaces with obstacles",
    "Large deviations for interacting particle systems",
    "Uniform bounds in polynomial dynamics",
    "A new look at classical capacity theory",
    "Limit shapes of random Young tableaux",
    "Hyperbolicity of certain moduli spaces",
    "Stochastic homogenization of Hamilton Jacobi equations",
    "Counting lattice points in expanding regions",
)

MAPLE_TRIGGER_ABSTRACTS = (
    "All identities were derived in the Maple system and simplified by hand afterwards.",
    "Symbolic bounds were produced with the Maple package before the analytic argument.",
    "We tabulated coefficients using the Maple system on commodity hardware.",
    "The recurrences were solved in the Maple system and checked against known tables.",
    "Closed form constants were evaluated with the Maple package to fifty digits.",
    "Our conjecture was first observed in experiments with the Maple system.",
    "Interval bounds were certified with the Maple package as an independent route.",
)

MAPLE_VERSION_ABSTRACT = (
    "All closed forms were verified in Maple 12. The tables list every constant involved."
)

MAPLE_TREE_ABSTRACTS = (
    "Field measurements were collected under a maple tree during autumn storms.",
    "The park survey covered every maple tree along the northern boundary ridge.",
    "Leaf samples from a maple tree were digitized for the shape statistics.",
    "Seasonal growth of the maple tree population was fitted with a logistic model.",
)

SINGULAR_LOWERCASE_ABSTRACTS = (
    "We study singular value decompositions of structured matrices under perturbation.",
    "The singular locus of the variety is resolved by two blowups at most.",
)

JUNK_TITLES = (
    "Benchmarking the HPC toolbox on large clusters",
    "A case study of the GPU solver stack",
)


def _planted_abstract(name: str, trigger: str, filler: str, partner=None,
                      partner_trigger=None) -> str:
    text = (f"We report computations performed with the {name} {trigger}. {filler}")
    if partner is not None:
        text += f" Results were cross-checked with the {partner} {partner_trigger}."
    return text


FILLERS = (
    "Timings are reported for all benchmark families.",
    "The implementation details are described in the appendix.",
    "All examples are reproducible from the published scripts.",
    "A comparison with earlier approaches is included.",
    "The observed complexity matches the theoretical estimate.",
)


def _partner_map() -> dict[str, str | None]:
    """pub 6 of each name cross-mentions the next cluster member,
    skipping the report-only package so nothing vouches for it."""
    by_cluster: dict[str, list[str]] = {}
    for planted in PLANTED:
        by_cluster.setdefault(planted.cluster, []).append(planted.name)
    partner: dict[str, str | None] = {}
    for members in by_cluster.values():
        for pos, name in enumerate(members):
            nxt = members[(pos + 1) % len(members)]
            if nxt == REPORT_ONLY:
                nxt = members[(pos + 2) % len(members)]
            partner[name] = None if nxt == name else nxt
    return partner


def generate_corpus(seed: int = DEFAULT_SEED):
    """Build (corpus, portal_records, curation_lines, manifest)."""
    rng = random.Random(seed)
    partner = _partner_map()
    trigger_of = {p.name: CLUSTERS[p.cluster].trigger for p in PLANTED}

    records: list[PublicationRecord] = []
    expected_refs: dict[str, set[str]] = {p.name: set() for p in PLANTED}
    expected_refs["Maple"] = set()
    expected_refs[PORTAL_ONLY] = set()

    pub_no = 0

    def next_id() -> str:
        nonlocal pub_no
        pub_no += 1
        return f"p{pub_no:04d}"

    for planted in PLANTED:
        cluster = CLUSTERS[planted.cluster]
        report_only = planted.name == REPORT_ONLY
        for k in range(6):
            pub_id = next_id()
            if k == 0:
                title = planted.signature_title
            elif k == 1:
                title = planted.followup_title
            else:
                title = cluster.generic_titles[(k - 2) % len(cluster.generic_titles)]

            mention_partner = partner[planted.name] if k == 5 else None
            abstract = _planted_abstract(
                planted.name, cluster.trigger,
                FILLERS[(k + len(planted.name)) % len(FILLERS)],
                mention_partner,
                trigger_of.get(mention_partner) if mention_partner else None,
            )

            source = "Report" if report_only else SOURCE_CYCLE[k]
            keywords = list(dict.fromkeys(rng.sample(cluster.keywords,
                                                     k=rng.randint(2, 4))))
            # one deliberate case variant so display-form selection has work
            if planted.name == "SINGULAR" and k == 4:
                keywords.append(cluster.keywords[0].lower())
            codes = sorted(rng.sample(cluster.msc_codes, k=rng.randint(1, 3)))
            authors = rng.sample(AUTHOR_POOL, k=rng.randint(1, 3))
            if planted.name == "SINGULAR" and k == 0 and "G. Steiner" not in authors:
                authors.insert(0, "G. Steiner")

            records.append(PublicationRecord(
                pub_id=pub_id,
                title=title,
                abstract_text=abstract,
                keywords=tuple(keywords),
                msc_codes=tuple(codes),
                year=rng.randint(2004, 2014),
                authors=tuple(authors),
                peer_reviewed=source == "Reviewed",
                source=source,
            ))
            expected_refs[planted.name].add(pub_id)
            if mention_partner:
                expected_refs[mention_partner].add(pub_id)

    distractor_specs: list[tuple[str, str, bool]] = []
    for abstract in MAPLE_TRIGGER_ABSTRACTS:
        distractor_specs.append((rng.choice(NEUTRAL_DISTRACTOR_TITLES), abstract, True))
    distractor_specs.append((rng.choice(NEUTRAL_DISTRACTOR_TITLES),
                             MAPLE_VERSION_ABSTRACT, True))
    for abstract in MAPLE_TREE_ABSTRACTS:
        distractor_specs.append((rng.choice(NEUTRAL_DISTRACTOR_TITLES), abstract, False))
    for abstract in SINGULAR_LOWERCASE_ABSTRACTS:
        distractor_specs.append((rng.choice(NEUTRAL_DISTRACTOR_TITLES), abstract, False))
    for title in JUNK_TITLES:
        distractor_specs.append((title, "No software is referenced in this study.", False))
    neutral_needed = 50 - len(distractor_specs)
    pool = [t for t in NEUTRAL_DISTRACTOR_TITLES]
    rng.shuffle(pool)
    for pos in range(neutral_needed):
        title = pool[pos % len(pool)]
        distractor_specs.append((
            title,
            "The argument is self-contained and fully elementary throughout.",
            False,
        ))

    distractor_codes = ("00A05", "03B35", "37D40", "60J22", "91G60", "76D05",
                        "42B37", "53C21")
    distractor_keywords = ("asymptotic analysis", "random structures",
                           "variational methods", "combinatorial bounds",
                           "ergodic averages", "numerical experiments")
    for title, abstract, mentions_maple in distractor_specs:
        pub_id = next_id()
        source = rng.choice(("Reviewed", "Proceedings", "Report"))
        records.append(PublicationRecord(
            pub_id=pub_id,
            title=title,
            abstract_text=abstract,
            keywords=tuple(dict.fromkeys(rng.sample(distractor_keywords,
                                                    k=rng.randint(1, 3)))),
            msc_codes=tuple(sorted(rng.sample(distractor_codes, k=rng.randint(1, 2)))),
            year=rng.randint(2004, 2014),
            authors=tuple(rng.sample(AUTHOR_POOL, k=rng.randint(1, 2))),
            peer_reviewed=source == "Reviewed",
            source=source,
        ))
        if mentions_maple:
            expected_refs["Maple"].add(pub_id)

    portal_records = [
        PortalRecord(portal_name="MathSoft Portal", software_name="Maple",
                     homepage="https://example.com/maple",
                     description="General purpose computer algebra system."),
        PortalRecord(portal_name="MathSoft Portal", software_name=PORTAL_ONLY,
                     homepage="https://example.com/orbitkit",
                     description="Toolkit for orbital mechanics computations."),
        PortalRecord(portal_name="NumHub", software_name="SINGULAR",
                     homepage="https://example.com/singular",
                     description="Computer algebra system for polynomial computations."),
        PortalRecord(portal_name="NumHub", software_name="PARDISO",
                     homepage="https://example.com/pardiso",
                     description="Parallel sparse direct solver."),
    ]

    curation_lines = [
        f"{normalize_name(p.name)}\taccept\t{p.name}" for p in PLANTED
    ] + [f"{junk}\treject" for junk in EXPECTED_JUNK]

    manifest = {
        "seed": seed,
        "publication_count": len(records),
        "planted_names": [p.name for p in PLANTED],
        "planted_normalized": [normalize_name(p.name) for p in PLANTED],
        "expected_junk": list(EXPECTED_JUNK),
        "report_only": REPORT_ONLY,
        "portal_only": PORTAL_ONLY,
        "expected_references": {
            name: sorted(pubs) for name, pubs in sorted(expected_refs.items())
        },
    }

    return Corpus(records), portal_records, curation_lines, manifest


def write_fixture(out_dir, seed: int = DEFAULT_SEED) -> dict:
    """Write corpus.jsonl, portals.jsonl, curation.tsv, manifest.json."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    corpus, portals, curation_lines, manifest = generate_corpus(seed)

    write_corpus(corpus, out / "corpus.jsonl")
    write_portal_records(portals, out / "portals.jsonl")
    with open(out / "curation.tsv", "w", encoding="utf-8") as fh:
        fh.write("\n".join(curation_lines) + "\n")
    with open(out / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest
