"""Smoke tests for the Python bindings: a thin pass over every exposed
surface with a few known values. The C++ suites carry the heavy checks."""

import math

import pytest

import vibrest


def test_sizing():
    assert vibrest.count_terms(7, 4, 3) == 148848
    assert vibrest.count_terms(13, 6, 3) == 13445172
    assert vibrest.polyyne_modes(80) == 481
    assert vibrest.qubit_count("unary", 7, 4) == 28
    assert vibrest.qubit_count("binary", 7, 4) == 14
    note = vibrest.binary_rounding_note(481, 10)
    assert "1598" in note and "1924" in note


def test_pauli_algebra():
    x = vibrest.PauliString("X")
    z = vibrest.PauliString("Z")
    assert vibrest.anticommutes(x, z)
    assert vibrest.product(x, z).to_text() == "Y"
    assert vibrest.nested_commutator([(1.0, "X"), (1.0, "Y"), (1.0, "Z")]) is None
    scale, string = vibrest.nested_commutator([(1.0, "X"), (1.0, "Y")])
    assert scale == 2.0 and string.to_text() == "Z"


def test_pauli_text_roundtrip():
    p = vibrest.PauliString("IXYZXI")
    assert str(p) == "IXYZXI"
    assert p.weight == 4
    with pytest.raises(ValueError):
        vibrest.PauliString("XQ")


def test_build_and_encode():
    problem = vibrest.VibProblem(1, 1, 2, [1000.0])
    sq = vibrest.build_second_quantized(problem, [])
    assert len(sq) == 2
    coeffs = sorted(t.coeff_cm1 for t in sq.terms)
    assert coeffs == [500.0, 1500.0]

    ladder = vibrest.SecondQuantizedHamiltonian(
        1, 2,
        [
            vibrest.SqTerm(4.0, [vibrest.SqFactor(0, 0, 1)]),
            vibrest.SqTerm(4.0, [vibrest.SqFactor(0, 1, 0)]),
        ])
    h = vibrest.encode(ladder, encoding="unary", cutoff=0.0)
    assert sorted(h.terms) == [(2.0, "XX"), (2.0, "YY")]


def test_ho_matrix_element():
    assert vibrest.ho_matrix_element(0, 1, 1, 4) == pytest.approx(1 / math.sqrt(2))
    assert vibrest.ho_matrix_element(0, 0, 2, 8) == pytest.approx(0.5)


def test_scaling_and_budget():
    h = vibrest.PauliHamiltonian(1, [(1.0, "X"), (1.0, "Z")])
    assert vibrest.alpha_exact(h, 1) == 4.0
    assert vibrest.crude_bound(h, 1) == 4.0

    bounds = vibrest.alpha_bounds(h, 1, 0.0)
    assert bounds.mode == "exact"
    assert bounds.lower == bounds.upper == 4.0

    crude = vibrest.alpha_bounds(h, 1, float("inf"))
    assert crude.mode == "crude"
    assert crude.lower == 0.0

    report = vibrest.qpe_budget(
        vibrest.PauliHamiltonian(2, [(1000.0, "XX")]), crude,
        vibrest.QpeConfig(approach="A"))
    assert report.n_ancilla == 13
    assert report.total_steps == sum(report.r_per_power)


def test_budget_limit_raises():
    import itertools
    letters = ["".join(p) for p in itertools.product("IXYZ", repeat=3)]
    h = vibrest.PauliHamiltonian(3, [(1.0, s) for s in letters if s != "III"])
    with pytest.raises(RuntimeError):
        vibrest.alpha_exact(h, 2, vibrest.ScalingOptions(check_budget=5))


def test_layering():
    assert vibrest.greedy_layers(["XI", "IX"], seed=1) == 1
    assert vibrest.greedy_layers(["X", "Y", "Z"], seed=1) == 3
    h = vibrest.PauliHamiltonian(4, [(1.0, "XIII"), (1.0, "IYII"),
                                     (1.0, "IIZI"), (1.0, "IIIX")])
    stats = vibrest.depth_ratio(h, runs=5, seed=9)
    assert stats.mean_ratio == 4.0
    again = vibrest.depth_ratio(h, runs=5, seed=9)
    assert stats.ratios == again.ratios


def test_file_io(tmp_path):
    h = vibrest.PauliHamiltonian(2, [(0.5, "XX"), (-1.25e-7, "ZI")], "meta")
    path = tmp_path / "h.pauli.txt"
    vibrest.write_pauli_file(path, h)
    back = vibrest.read_pauli_file(path)
    assert back.terms == h.terms
    assert back.meta == "meta"
