from mindeg.solver.cover import Candidate, CoverInstance, CoverSolution, build_cover, solve_cover
from mindeg.solver.lattice import GroupTable, SubgroupLattice, enumerate_subgroups
from mindeg.solver.mu import (
    METHODS,
    ExactSolve,
    MuCertificate,
    SandwichInterval,
    WitnessEntry,
    certify_sandwich,
    intransitive_optimum,
    moved_points,
    mu_exact,
    mu_transitive,
    naive_mu,
    replacement_pair,
    solve_exact,
    sympy_group,
    transitive_certificate,
    verify_witness,
)

__all__ = [
    "METHODS",
    "Candidate",
    "CoverInstance",
    "CoverSolution",
    "ExactSolve",
    "GroupTable",
    "MuCertificate",
    "SandwichInterval",
    "SubgroupLattice",
    "WitnessEntry",
    "build_cover",
    "certify_sandwich",
    "enumerate_subgroups",
    "intransitive_optimum",
    "moved_points",
    "mu_exact",
    "mu_transitive",
    "naive_mu",
    "replacement_pair",
    "solve_cover",
    "solve_exact",
    "sympy_group",
    "transitive_certificate",
    "verify_witness",
]
