"""Binary and quantum binary PSO for tree-encoded ligand design.

Chromosomes are '0'/'1' strings of CHROMOSOME_BITS characters (right tree
first). Sites are JSON documents as written by ``generate_site`` or the
``ligpso gen-site`` command; ``None`` means the barrel-default site.
"""

from ._ligpso import (
    CHROMOSOME_BITS,
    FitnessError,
    SearchSpaceTooLarge,
    SiteError,
    cmd_compare,
    cmd_optimize,
    compute_bounds,
    correct,
    decode,
    energy,
    generate_site,
    optimize,
    oracle,
    run_optimizer,
    sigmoid,
)

__all__ = [
    "CHROMOSOME_BITS",
    "FitnessError",
    "SearchSpaceTooLarge",
    "SiteError",
    "cmd_compare",
    "cmd_optimize",
    "compute_bounds",
    "correct",
    "decode",
    "energy",
    "generate_site",
    "optimize",
    "oracle",
    "run_optimizer",
    "sigmoid",
]
__version__ = "0.1.0"
