import random

import pytest
from gmpy2 import mpq

from sextics.errors import FieldMismatch
from sextics.numfield import (NumberField, count_real_roots, enumerate_embeddings,
                              extend_field, field_arithmetic, fields_isomorphic,
                              format_element, numeric_evaluate, parse_element)


def test_reduction_by_minimal_polynomial():
    K = NumberField([-2, 0, 1])
    z = K.gen()
    assert z * z == 2
    assert 1 / z == z / 2


def test_quadratic_identity_from_catalog_field():
    # (32e - 59)^2 reduces to 153 when 16e^2 - 59e + 52 = 0
    K = NumberField([52, -59, 16])
    e = K.gen()
    assert (32 * e - 59) ** 2 == 153
    assert (32 * e - 59).min_poly_over_QQ() == [mpq(-153), mpq(0), mpq(1)]


def test_field_arithmetic_dispatcher_and_errors():
    K = NumberField([-2, 0, 1])
    z = K.gen()
    assert field_arithmetic(z, z, "mul") == 2
    assert field_arithmetic(z, z, "sub") == 0
    assert field_arithmetic(1 + z, z, "div") == (1 + z) / z
    with pytest.raises(ZeroDivisionError):
        field_arithmetic(z, K.zero, "div")
    K2 = NumberField([-3, 0, 1])
    with pytest.raises(FieldMismatch):
        field_arithmetic(z, K2.gen(), "add")


def test_field_axioms_random():
    K = NumberField([276, -372, -20, 195, -45, -27, 9])
    rnd = random.Random(0)

    def rand_elem():
        return K.from_coeffs([rnd.randint(-4, 4) for _ in range(6)])

    for _ in range(25):
        x, y, z = rand_elem(), rand_elem(), rand_elem()
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        if x:
            assert x * (1 / x) == 1


def test_embedding_counts_and_order():
    K = NumberField([-17, 0, 1])
    embs = K.embeddings()
    assert [e.is_real for e in embs] == [True, True]
    assert embs[0].box.re_hi < embs[1].box.re_lo  # ascending

    K2 = NumberField([1, 0, 1])
    embs2 = K2.embeddings()
    assert [e.is_real for e in embs2] == [False, False]
    # conjugate pair adjacent, positive imaginary part first
    assert embs2[0].box.im_lo > 0 > embs2[1].box.im_hi


def test_embeddings_of_the_degree_six_catalog_field():
    # purely imaginary sextic field: no real embeddings, three pairs
    K = NumberField([276, -372, -20, 195, -45, -27, 9])
    assert K.signature() == (0, 3)
    embs = K.embeddings()
    assert len(embs) == 6 and not any(e.is_real for e in embs)
    boxes = [e.box for e in embs]
    for i in range(6):
        for j in range(i + 1, 6):
            assert boxes[i].disjoint(boxes[j])


def test_numeric_evaluate_certified_boxes():
    K = NumberField([-2, 0, 1])
    pos = max(K.embeddings(), key=lambda e: e.box.re_lo)
    box = numeric_evaluate(K.gen(), pos, 40)
    assert box.re_hi - box.re_lo <= mpq(1, 2 ** 40)
    # sqrt2 = 1.41421356...
    assert box.re_lo <= mpq(141421357, 100000000)
    assert box.re_hi >= mpq(141421356, 100000000)

    zero_box = numeric_evaluate(K.coerce(0), pos, 10)
    assert zero_box.re_lo == zero_box.re_hi == 0

    # epsilon = (59 + 3 sqrt17)/32 = 2.23029...
    K2 = NumberField([52, -59, 16])
    big = max(K2.embeddings(), key=lambda e: e.box.re_lo)
    bx = numeric_evaluate(K2.gen(), big, 40)
    assert bx.re_lo <= mpq(223030, 100000) and bx.re_hi >= mpq(223029, 100000)


def test_numeric_evaluate_is_multiplicative_up_to_width():
    K = NumberField([-2, 0, 1])
    emb = K.embeddings()[1]
    z = K.gen()
    x = 1 + z
    bx = numeric_evaluate(x, emb, 30)
    bxx = numeric_evaluate(x * x, emb, 30)
    lo = bx.re_lo * bx.re_lo
    hi = bx.re_hi * bx.re_hi
    assert lo - mpq(1, 2 ** 20) <= bxx.re_lo and bxx.re_hi <= hi + mpq(1, 2 ** 20)


def test_extend_field_tower_flattening():
    K, _, r2 = extend_field(None, [mpq(-2), mpq(0), mpq(1)])
    assert r2 * r2 == 2
    L, emb, r4 = extend_field(K, [-r2, K.zero, K.one])
    assert L.degree == 4
    assert r4 * r4 == emb(r2)
    assert emb(r2) ** 2 == 2


def test_fields_isomorphic():
    # z^2 - 2 and z^2 - 8 generate the same field; z^2 - 3 does not
    assert fields_isomorphic([-2, 0, 1], [-8, 0, 1])
    assert not fields_isomorphic([-2, 0, 1], [-3, 0, 1])


def test_canonical_text_round_trip():
    K = NumberField([52, -59, 16])
    x = K.from_coeffs([mpq(1, 2), mpq(3, 4)])
    text = format_element(x)
    assert text == "(52 - 59*e + 16*e^2 = 0; x = 1/2 + 3/4*e)"
    back = parse_element(text)
    assert back.coeffs == x.coeffs and back.field == K
    assert parse_element("7/3") == mpq(7, 3)


def test_sturm_root_counts():
    assert count_real_roots([mpq(-2), mpq(0), mpq(1)]) == 2
    assert count_real_roots([mpq(1), mpq(0), mpq(1)]) == 0
    assert count_real_roots([mpq(-2), mpq(0), mpq(1)], mpq(0), mpq(2)) == 1
