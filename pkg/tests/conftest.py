import pytest

from s2cobar.hopf import FreeTensorBialgebra, tensor_hopf_algebra
from s2cobar.rings import ZZ


@pytest.fixture
def nonprim():
    """T(a,e,b) with Delta-bar(b) = a (x) a and d(e) = a."""
    return FreeTensorBialgebra(ZZ, {"a": 2, "e": 3, "b": 4},
                               reduced_diagonal={"b": {(("a",), ("a",)): 1}},
                               differential={"e": {("a",): 1}})


@pytest.fixture
def tvw():
    return tensor_hopf_algebra(ZZ, {"v": 2, "w": 3})
