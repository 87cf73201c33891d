"""
Reproduce the PGL(2,9) prime graph classification

This script will:
1. Build PGL(2,9) and the three solvable groups sharing its prime graph
2. Compare every prime graph with the one of PGL(2,9)
3. Verify the Frobenius and 2-Frobenius witnesses
4. Classify each group into its structural case
5. Check the neighbours A5, S5 and PSL(2,9) and the 5^4:(2^2:3) extension

Usage:
    python scripts/reproduce_classification.py
"""

import os
import sys
import logging

# Add parent directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from app.services import constructions
from app.services.spectra import graphs_equal, mu, prime_graph_of, spectrum
from app.services.structure import (
    FrobeniusWitness,
    classify,
    verify_2frobenius,
    verify_coprime_extension,
    verify_frobenius,
)

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

EXPECTED_CASES = {
    "paper.g1": "Case1",
    "paper.g2": "Case2",
    "paper.g3": "Case3",
    "pgl2(9)": "Case4",
    "alt(5)": "NoMatch",
    "sym(5)": "NoMatch",
    "psl2(9)": "NoMatch",
}


def main():
    failures = []
    reference = constructions.pgl2(9)
    reference_graph = prime_graph_of(reference)
    logger.info(f"PGL(2,9): order {reference.order}, mu {list(mu(spectrum(reference)).maxima)}")

    groups = {
        "paper.g1": constructions.paper_g1(),
        "paper.g2": constructions.paper_g2(),
        "paper.g3": constructions.paper_g3(),
        "pgl2(9)": reference,
        "alt(5)": constructions.alternating(5),
        "sym(5)": constructions.symmetric(5),
        "psl2(9)": constructions.psl2(9),
    }

    # STEP 1: prime graphs
    for name, group in groups.items():
        same = graphs_equal(prime_graph_of(group), reference_graph)
        logger.info(f"{name}: order {group.order}, same prime graph as PGL(2,9): {same}")

    # STEP 2: witnesses
    for name in ("paper.g1", "paper.g2"):
        group = groups[name]
        report = verify_frobenius(group, FrobeniusWitness(group.kernel_subgroup(), group.complement_subgroup()))
        logger.info(f"{name}: Frobenius verification {'passed' if report.overall else 'FAILED'}")
        if not report.overall:
            failures.append(f"{name} frobenius")

    g3 = groups["paper.g3"]
    h, k = constructions.paper_g3_series(g3)
    report = verify_2frobenius(g3, h, k)
    logger.info(f"paper.g3: 2-Frobenius verification {'passed' if report.overall else 'FAILED'} ({'; '.join(report.notes)})")
    if not report.overall:
        failures.append("paper.g3 2frobenius")

    # STEP 3: classification
    for name, group in groups.items():
        case = classify(group).case
        logger.info(f"{name}: {case}")
        if case != EXPECTED_CASES[name]:
            failures.append(f"{name} classified as {case}, expected {EXPECTED_CASES[name]}")

    # STEP 4: coprime extension 5^4:(2^2:3)
    extension = constructions.permutation_module(5, 4, [[(1, 2), (3, 4)], [(1, 3), (2, 4)], [(1, 2, 3)]])
    report = verify_coprime_extension(extension)
    logger.info(f"{extension.descriptor}: order {extension.order}, extension check {'passed' if report.overall else 'FAILED'}")
    if not report.overall:
        failures.append("coprime extension")

    if failures:
        for failure in failures:
            logger.error(f"FAILED: {failure}")
        sys.exit(1)
    logger.info("All classification checks passed")


if __name__ == "__main__":
    main()
