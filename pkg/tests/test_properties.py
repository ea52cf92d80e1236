"""Property suites for complexes, truncation, homotopies and the moduli action."""
import props


def test_hom_and_tensor_square_to_zero():
    props.suite_hom_tensor_square_zero()()


def test_truncation_quasi_iso_iff_above_sup():
    props.suite_truncation()()


def test_null_homotopic_maps_vanish_on_homology():
    props.suite_null_homotopic()()


def test_group_action_composes():
    props.suite_group_action()()


def test_constraints_match_axioms_over_f2():
    assert props.exhaustive_constraint_equivalence() == 4 + 16 + 256
