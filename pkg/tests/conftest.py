import pytest
from hypothesis import strategies as st

from mukai.cohomology import EvenClass, elliptic_product_model

SMALL = st.integers(min_value=-6, max_value=6)


@st.composite
def even_classes(draw, rank=6, ints=SMALL):
    return EvenClass(draw(ints), tuple(draw(ints) for _ in range(rank)), draw(ints))


@pytest.fixture(scope="session")
def abelian():
    return elliptic_product_model()
