import numpy as np
import pytest

from sharpmeans import functions as F
from sharpmeans import gen
from sharpmeans.maps import (
    Compression,
    ConvexCombination,
    Identity,
    NormalizedTrace,
    Pinching,
    UnitaryConjugation,
    apply_map,
    map_catalog,
    map_from_dict,
    validate_map,
)


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_catalog_maps_positive_and_unital(n):
    for phi in map_catalog(n, 3):
        verdict = validate_map(phi, n, trials=20, seed=1)
        assert verdict.positive_ok and verdict.unital_ok, phi.label


def test_perturbed_compression_not_unital():
    verdict = validate_map(Compression(4, 2, 0, perturb=0.1), 4, trials=5)
    assert verdict.positive_ok and not verdict.unital_ok


def test_map_values():
    X = np.array([[2.0, 1.0], [1.0, 4.0]])
    assert np.allclose(apply_map(Identity(), X), X)
    assert np.allclose(apply_map(Pinching((1, 1)), X), np.diag([2.0, 4.0]))
    assert np.allclose(apply_map(NormalizedTrace(), X), 3.0 * np.eye(2))
    U = UnitaryConjugation(2, 5)
    assert np.allclose(np.linalg.eigvalsh(U(X)), np.linalg.eigvalsh(X))
    assert Compression(4, 2, 0)(np.eye(4)).shape == (2, 2)


def test_map_dimension_mismatch():
    with pytest.raises(ValueError):
        UnitaryConjugation(3, 0)(np.eye(2))


def test_convex_combination_validation():
    with pytest.raises(ValueError):
        ConvexCombination((0.5, 0.6), (Identity(), NormalizedTrace()))
    with pytest.raises(ValueError):
        ConvexCombination((1.0,), (Identity(), NormalizedTrace()))


def test_map_roundtrip():
    for phi in map_catalog(4, 7) + [Compression(4, 2, 1, perturb=0.2)]:
        back = map_from_dict(phi.to_dict())
        X = gen.random_pd(4, (0.5, 2.0), 3)
        assert np.allclose(back(X), phi(X))
    with pytest.raises(ValueError):
        map_from_dict({"variant": "nope"})


def test_function_registry_classes():
    assert {d.label for d in F.by_class("convex")} == {"x^-1", "x^2"}
    assert "x^0.5" in {d.label for d in F.by_class("monotone")}
    with pytest.raises(KeyError):
        F.get("sin")
    with pytest.raises(ValueError):
        F.by_class("weird")


def test_function_eval():
    A = np.diag([1.0, 4.0])
    assert np.allclose(F.get("x^0.5")(A), np.diag([1.0, 2.0]))
    assert F.get("log(1+x)").scalar(1.0) == pytest.approx(np.log(2))
    # x^2 accepts an indefinite argument
    assert np.allclose(F.get("x^2")(np.diag([-1.0, 2.0])), np.diag([1.0, 4.0]))


@pytest.mark.parametrize("label", sorted(F.REGISTRY))
def test_declared_classes_hold(label):
    d = F.get(label)
    for cls in d.declared_class:
        verdict = F.verify_function_class(d, cls, 3, trials=30, seed=2)
        assert verdict.consistent, (label, cls, verdict.worst_margin)


def test_verifier_catches_false_declaration():
    # x^2 is not operator monotone; the search must find a witness
    fake = F.FunctionDescriptor("x^2", lambda x: np.asarray(x) ** 2, frozenset({"monotone"}), True, None)
    verdict = F.verify_function_class(fake, "monotone", 2, trials=200, seed=0)
    assert not verdict.consistent and verdict.witness is not None


def test_verifier_rejects_undeclared_class():
    with pytest.raises(ValueError):
        F.verify_function_class(F.get("x"), "convex", 2)
