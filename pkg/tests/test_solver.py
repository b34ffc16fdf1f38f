import dataclasses
import itertools
import time

import pytest

from mindeg.budget import Budget
from mindeg.config import EngineConfig
from mindeg.constructors import Hpq, construct
from mindeg.exceptions import BudgetExceeded, CapExceeded, CertificateError, ConfigError, NoFeasibleCover
from mindeg.perm import Perm, PermGroup
from mindeg.solver import (
    SandwichInterval,
    build_cover,
    certify_sandwich,
    enumerate_subgroups,
    intransitive_optimum,
    mu_exact,
    mu_transitive,
    naive_mu,
    replacement_pair,
    solve_cover,
    transitive_certificate,
    verify_witness,
)
from mindeg.strategy import Strategy, compute_mu
from mindeg.subgroups import coset_action, generated_subgroup, intersection, normal_lattice

from .conftest import build


@pytest.mark.parametrize(
    "text, mu",
    [("S(4)", 4), ("C(6)", 5), ("C(8)", 8), ("D(4)", 4), ("Ab(2,2)", 4), ("D(6)", 5), ("S(3)", 3), ("C(1)", 0)],
)
def test_mu_exact_small(text, mu):
    cert = mu_exact(build(text), label=text)
    assert cert.mu == mu
    assert cert.method == "exact-cover"
    assert sum(w.index for w in cert.witness) == mu


def test_mu_exact_gppq():
    assert mu_exact(build("G(3,3,3)")).mu == 9
    assert mu_exact(build("G(2,2,3)")).mu == 4


@pytest.mark.slow
def test_mu_exact_hpq_below_transitive_bound():
    cert = mu_exact(build("H(7,3)"))
    assert cert.mu == 14
    assert len(cert.witness) == 2


@pytest.mark.parametrize("text", ["S(4)", "C(6)", "D(4)", "Ab(2,2)", "D(6)", "Ab(2,2,2)", "A(4,2,2)", "X(S(3),C(2))"])
def test_naive_agrees_with_exact(text):
    group = build(text)
    assert naive_mu(group).mu == mu_exact(group).mu


def test_naive_cap_is_enforced():
    with pytest.raises(CapExceeded):
        naive_mu(build("S(5)"))


def test_transitive():
    assert mu_transitive(build("S(4)")) == 4
    assert mu_transitive(build("Ab(2,2)")) is None
    assert transitive_certificate(build("Ab(2,2)")) is None
    cert = transitive_certificate(build("S(4)"))
    assert cert.mu == 4
    assert len(cert.witness) == 1


def test_lattice_cap_raises():
    with pytest.raises(CapExceeded) as err:
        mu_exact(build("S(4)"), EngineConfig(lattice_cap=10))
    assert err.value.cap == 10


def test_budget_exceeded():
    budget = Budget(0.001, stride=1)
    time.sleep(0.01)
    with pytest.raises(BudgetExceeded):
        mu_exact(build("S(4)"), budget=budget)


def test_sandwich_inconclusive():
    group = build("D(4)")
    sub = PermGroup(4, [Perm.from_cycles(4, (0, 2))])
    result = certify_sandwich(group, sub, label="D(4)")
    assert isinstance(result, SandwichInterval)
    assert (result.lower, result.upper) == (2, 4)
    assert not result.conclusive


def test_sandwich_rejects_foreign_subgroup():
    group = build("D(4)")
    sub = PermGroup(4, [Perm.from_cycles(4, (0, 1))])
    with pytest.raises(CertificateError):
        certify_sandwich(group, sub)


def test_sandwich_rejects_lower_bound_above_moved_points(monkeypatch):
    exact = mu_exact
    monkeypatch.setattr(
        "mindeg.solver.mu.mu_exact",
        lambda *args, **kwargs: dataclasses.replace(exact(*args, **kwargs), mu=5),
    )
    sub = PermGroup(4, [Perm.from_cycles(4, (0, 2))])
    with pytest.raises(CertificateError, match="exceeds the 4 points"):
        certify_sandwich(build("D(4)"), sub, label="D(4)")


@pytest.mark.slow
def test_sandwich_certifies_gppq():
    group = build("G(3,3,5)")
    sub = build("H(3,5)")
    cert = certify_sandwich(group, sub, label="G(3,3,5)", sub_label="H(3,5)")
    assert cert.mu == 15
    assert cert.lower_bound_evidence.mu == 15
    assert sum(w.index for w in cert.witness) == 15


def test_cover_instance_s4():
    lattice = enumerate_subgroups(build("S(4)"))
    assert len(lattice) == 30
    instance = build_cover(lattice)
    assert len(instance.universe) == 1
    assert all(c.cover == instance.full for c in instance.candidates)
    solution = solve_cover(instance)
    assert solution.weight == 4


def test_cover_instance_klein():
    lattice = enumerate_subgroups(build("Ab(2,2)"))
    instance = build_cover(lattice)
    assert len(instance.universe) == 3
    solution = solve_cover(instance)
    assert solution.weight == 4
    assert len(solution.chosen) == 2
    assert instance.covers_universe(solution.chosen)


def test_cover_without_two_member_solution_raises():
    instance = build_cover(enumerate_subgroups(build("C(5)")))
    assert solve_cover(instance).weight == 5
    with pytest.raises(NoFeasibleCover, match="at least 2") as err:
        solve_cover(instance, min_candidates=2)
    assert err.value.min_candidates == 2
    with pytest.raises(NoFeasibleCover):
        intransitive_optimum(build("C(5)"))


def test_unpruned_cover_keeps_every_subgroup():
    lattice = enumerate_subgroups(build("D(4)"))
    pruned = build_cover(lattice)
    full = build_cover(lattice, prune=False)
    assert len(full.candidates) >= len(pruned.candidates)
    assert solve_cover(full).weight == solve_cover(pruned).weight == 4


@pytest.mark.parametrize("text", ["S(3)", "D(4)", "Ab(2,2)", "D(6)", "A(4,2,2)"])
def test_cover_matches_coset_action_kernel(text):
    group = build(text)
    lattice = enumerate_subgroups(group)
    instance = build_cover(lattice, prune=False)
    for a, b in itertools.combinations_with_replacement(instance.candidates, 2):
        records = [lattice.record(a.subgroup), lattice.record(b.subgroup)]
        assert instance.covers_universe([a, b]) == coset_action(group, records).is_faithful


def test_verify_witness_rejects_wrong_total():
    group = build("S(3)")
    cert = mu_exact(group)
    with pytest.raises(CertificateError):
        verify_witness(group, cert.subgroups, cert.mu + 1)


@pytest.mark.slow
def test_intransitive_optimum_and_replacement():
    built = construct(Hpq(7, 3))
    group = built.group
    solved = intransitive_optimum(group)
    assert solved.weight == 14
    assert len(solved.records) >= 2

    lattice = normal_lattice(group)
    L = generated_subgroup(group, [built.named.b])
    L1, L2 = replacement_pair(group, lattice, L)
    assert intersection(L1.core, L2.core) == L.core
    assert L1.index + L2.index < L.index
    with pytest.raises(ValueError):
        replacement_pair(group, lattice, lattice.minimal_normals[0])


def test_strategy():
    config = EngineConfig()
    group = build("S(4)")
    assert Strategy().decide(group, config) == "exact"
    assert Strategy().decide(group, config, lower="S(3)") == "sandwich"
    assert Strategy().decide(group, EngineConfig(lattice_cap=10), lower="S(3)") == "sandwich"
    assert compute_mu(group, "naive", config).mu == 4
    with pytest.raises(ConfigError):
        compute_mu(group, "bogus", config)
    with pytest.raises(ConfigError):
        compute_mu(group, "sandwich", config)


def test_auto_past_lattice_cap_asks_for_lower_bound():
    group = build("S(6)")
    config = EngineConfig(lattice_cap=100)
    with pytest.raises(CapExceeded, match="--lower") as err:
        Strategy().decide(group, config)
    assert err.value.cap == 100
    with pytest.raises(CapExceeded, match="order 720"):
        compute_mu(group, "auto", config)
