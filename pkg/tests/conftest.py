import pytest

from wenum import autgroup, codes, gf2


@pytest.fixture(scope="session")
def qr7():
    return codes.qr_code(7)


@pytest.fixture(scope="session")
def qr17():
    return codes.qr_code(17)


@pytest.fixture(scope="session")
def qr23():
    return codes.qr_code(23)


@pytest.fixture(scope="session")
def eqr24(qr23):
    return codes.extend_code(qr23)


@pytest.fixture(scope="session")
def ext_hamming(qr7):
    return codes.extend_code(qr7)


@pytest.fixture(scope="session")
def psl23():
    return autgroup.psl2_generators(23)


@pytest.fixture(scope="session")
def bch15_7():
    gen = gf2.Gf2Poly(gf2.poly_mul(gf2.min_poly(15, 1).bits, gf2.min_poly(15, 3).bits))
    return codes.cyclic_code(15, gen, construction="bch n=15 k=7")
