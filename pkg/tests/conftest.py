"""Shared hypothesis strategies for small exact measures and signals."""
from fractions import Fraction

from hypothesis import strategies as st

from deconv import EXACT, from_atoms

# Small rational weights keep convolution powers cheap while exercising
# signs, zeros, and non-dyadic denominators.
weights = st.fractions(min_value=Fraction(-5), max_value=Fraction(5),
                       max_denominator=8)


def lattice_points(dimension: int):
    coord = st.integers(-5, 5)
    return st.tuples(*([coord] * dimension))


def measures(dimension: int, max_atoms: int = 4):
    return st.dictionaries(lattice_points(dimension), weights,
                           max_size=max_atoms).map(
        lambda d: from_atoms(d, mode=EXACT, dimension=dimension))


measures_1d = measures(1)
measures_2d = measures(2)
nonzero_measures_1d = measures_1d.filter(lambda m: not m.is_zero)
