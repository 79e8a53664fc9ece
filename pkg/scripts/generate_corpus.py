#!/usr/bin/env python3
"""
Generate a benchmark corpus for `scc-deletion bench`.
Usage: python3 scripts/generate_corpus.py --output corpus/ [--count 100] [--seed 0]
Output: <problem>_<index>.txt instance files, each with a <name>.json sidecar

Planted instances are feasible by construction. With --random, seeded random
instances are added as well; their sidecar records the brute-force verdict.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path

from scc_deletion.errors import SccDeletionError
from scc_deletion.instance_io import Sidecar, write_graph, write_sidecar
from scc_deletion.oracle import brute_force, planted_instance, random_instance
from scc_deletion.problems import Problem

logger = logging.getLogger(__name__)

# (problem, largest n, largest k, largest s); arc problems stay small for the oracle
PROFILES = [
    (Problem.DFVS, 9, 3, None),
    (Problem.BSSCVD, 9, 2, 3),
    (Problem.OORVD, 8, 2, None),
    (Problem.DFAS, 5, 1, None),
    (Problem.BSSCAD, 4, 1, 2),
    (Problem.OORAD, 5, 1, None),
]


def generate_corpus(output: Path, count: int, seed: int, with_random: bool) -> int:
    """Write ``count`` planted (and optionally ``count`` random) instances; returns files written"""
    output.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    written = 0

    for index in range(count):
        problem, max_n, max_k, max_s = PROFILES[index % len(PROFILES)]
        k = rng.randint(0, max_k)
        n = rng.randint(k + 1, max(k + 1, max_n))
        s = rng.randint(1, max_s) if max_s else None
        planted = planted_instance(n, k, s, rng.randrange(2**31), problem)

        path = output / f"{problem.value}_{index:03d}.txt"
        write_graph(path, planted.instance.graph)
        write_sidecar(path, Sidecar(problem.value, k, s, feasible=True))
        written += 1

        if not with_random:
            continue
        m = rng.randint(0, 2 * n)
        instance = random_instance(n, m, rng.randrange(2**31), problem, k, s)
        path = output / f"{problem.value}_{index:03d}_random.txt"
        write_graph(path, instance.graph)
        feasible = brute_force(instance) is not None
        write_sidecar(path, Sidecar(problem.value, k, s, feasible=feasible))
        written += 1

    return written


def main() -> int:
    """Main entry point"""
    parser = argparse.ArgumentParser(description="Generate a planted benchmark corpus")
    parser.add_argument("--output", type=Path, required=True, help="Corpus directory")
    parser.add_argument("--count", type=int, default=100, help="Planted instances (default: 100)")
    parser.add_argument("--seed", type=int, default=0, help="Corpus seed (default: 0)")
    parser.add_argument(
        "--random", action="store_true", help="Also add one random instance per planted one"
    )
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s] %(message)s")

    try:
        written = generate_corpus(args.output, args.count, args.seed, args.random)
    except (SccDeletionError, OSError) as e:
        logger.error("Corpus generation failed: %s", e)
        return 1

    logger.info("Wrote %d instances to %s", written, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
