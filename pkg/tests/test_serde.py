"""JSON round-trips for vectors, operators, partial maps, and subspaces."""

import json
import math

import numpy as np
import pytest

from ketlab.errors import MalformedJson, NotOrthonormalBasis
from ketlab.hop import HOp, PartialMap, classical_operator
from ketlab.hvec import HVec, ket
from ketlab.numeric import RngStream
from ketlab import serde


def rand_vec(rng, n):
    return HVec([complex(2 * rng.next_float() - 1, 2 * rng.next_float() - 1) for _ in range(n)])


def rand_op(rng, m, n):
    rows = [[complex(2 * rng.next_float() - 1, 2 * rng.next_float() - 1) for _ in range(n)] for _ in range(m)]
    return HOp(rows)


class TestVectorJson:
    def test_ket_shape(self):
        doc = serde.vec_to_json(ket(1, 3))
        assert doc == {"dim": 3, "coeffs": [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]}

    def test_round_trip_random(self):
        rng = RngStream(7)
        for _ in range(25):
            n = 1 + rng.next_below(6)
            x = rand_vec(rng, n)
            y = serde.vec_from_json(serde.vec_to_json(x))
            assert np.array_equal(x.coeffs, y.coeffs)

    def test_survives_json_text(self):
        x = HVec([1 + 2j, -0.5j])
        text = json.dumps(serde.vec_to_json(x))
        y = serde.vec_from_json(json.loads(text))
        assert np.array_equal(x.coeffs, y.coeffs)

    def test_dim_mismatch_rejected(self):
        with pytest.raises(MalformedJson):
            serde.vec_from_json({"dim": 3, "coeffs": [[1.0, 0.0]]})

    def test_bad_pair_rejected(self):
        with pytest.raises(MalformedJson):
            serde.vec_from_json({"dim": 1, "coeffs": [[1.0]]})

    def test_missing_key_rejected(self):
        with pytest.raises(MalformedJson):
            serde.vec_from_json({"coeffs": [[1.0, 0.0]]})

    def test_non_dict_rejected(self):
        with pytest.raises(MalformedJson):
            serde.vec_from_json([[1.0, 0.0]])

    def test_nonfinite_rejected(self):
        with pytest.raises(MalformedJson):
            serde.vec_from_json({"dim": 1, "coeffs": [[math.inf, 0.0]]})


class TestOperatorJson:
    def test_swap_shape(self):
        swap = HOp([[0, 1], [1, 0]])
        doc = serde.op_to_json(swap)
        assert doc == {
            "rows": 2,
            "cols": 2,
            "entries": [[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
        }

    def test_entries_row_major(self):
        a = HOp([[1, 2], [3, 4]])
        doc = serde.op_to_json(a)
        assert [p[0] for p in doc["entries"]] == [1.0, 2.0, 3.0, 4.0]

    def test_round_trip_random(self):
        rng = RngStream(11)
        for _ in range(25):
            m = 1 + rng.next_below(5)
            n = 1 + rng.next_below(5)
            a = rand_op(rng, m, n)
            b = serde.op_from_json(serde.op_to_json(a))
            assert np.array_equal(a.mat, b.mat)

    def test_entry_count_checked(self):
        with pytest.raises(MalformedJson):
            serde.op_from_json({"rows": 2, "cols": 2, "entries": [[1.0, 0.0]]})

    def test_rows_must_be_positive_int(self):
        with pytest.raises(MalformedJson):
            serde.op_from_json({"rows": 0, "cols": 1, "entries": []})


class TestPartialMapJson:
    def test_shape(self):
        pm = PartialMap(3, 2, (1, None, 0))
        assert serde.pm_to_json(pm) == {"dom": 3, "cod": 2, "map": [1, None, 0]}

    def test_round_trip(self):
        pm = PartialMap(4, 3, (2, None, None, 0))
        back = serde.pm_from_json(serde.pm_to_json(pm))
        assert back.dom == pm.dom and back.cod == pm.cod and back.images == pm.images
        a = classical_operator(pm)
        b = classical_operator(back)
        assert np.array_equal(a.mat, b.mat)

    def test_out_of_range_rejected(self):
        with pytest.raises(MalformedJson):
            serde.pm_from_json({"dom": 2, "cod": 2, "map": [5, None]})

    def test_map_length_checked(self):
        with pytest.raises(MalformedJson):
            serde.pm_from_json({"dom": 2, "cod": 2, "map": [0]})


class TestSubspaceJson:
    def test_round_trip_random(self):
        from ketlab.hsub import seq, span

        rng = RngStream(13)
        for _ in range(20):
            n = 1 + rng.next_below(5)
            k = 1 + rng.next_below(n)
            s = span([rand_vec(rng, n) for _ in range(k)], n)
            t = serde.sub_from_json(serde.sub_to_json(s))
            assert t.ambient == s.ambient
            assert len(t.onb) == len(s.onb)
            assert seq(s, t)

    def test_basis_validated_on_load(self):
        doc = {
            "ambient": 2,
            "basis": [
                {"dim": 2, "coeffs": [[1.0, 0.0], [0.0, 0.0]]},
                {"dim": 2, "coeffs": [[1.0, 0.0], [0.0, 0.0]]},
            ],
        }
        with pytest.raises(NotOrthonormalBasis):
            serde.sub_from_json(doc)

    def test_non_unit_rejected(self):
        doc = {"ambient": 2, "basis": [{"dim": 2, "coeffs": [[2.0, 0.0], [0.0, 0.0]]}]}
        with pytest.raises(NotOrthonormalBasis):
            serde.sub_from_json(doc)

    def test_empty_basis_is_bot(self):
        from ketlab.hsub import sdim

        s = serde.sub_from_json({"ambient": 3, "basis": []})
        assert sdim(s) == 0 and s.ambient == 3


class TestEnvelope:
    def test_scalar(self):
        doc = serde.dump_value(1.5 - 2j)
        assert doc == {"sort": "scalar", "value": [1.5, -2.0]}
        assert serde.load_value(doc) == 1.5 - 2j

    def test_bool(self):
        assert serde.dump_value(True) == {"sort": "bool", "value": True}
        assert serde.load_value({"sort": "bool", "value": False}) is False

    def test_vector(self):
        x = HVec([1j, 2])
        doc = serde.dump_value(x)
        assert doc["sort"] == "vector"
        assert np.array_equal(serde.load_value(doc).coeffs, x.coeffs)

    def test_operator(self):
        a = HOp([[1, 2j]])
        doc = serde.dump_value(a)
        assert doc["sort"] == "operator"
        assert np.array_equal(serde.load_value(doc).mat, a.mat)

    def test_subspace(self):
        from ketlab.hsub import seq, span

        s = span([ket(0, 3), ket(2, 3)], 3)
        doc = serde.dump_value(s)
        assert doc["sort"] == "subspace"
        assert seq(serde.load_value(doc), s)

    def test_partial_map(self):
        pm = PartialMap(2, 2, (None, 1))
        doc = serde.dump_value(pm)
        assert doc["sort"] == "partial_map"
        assert serde.load_value(doc).images == (None, 1)

    def test_unknown_sort_rejected(self):
        with pytest.raises(MalformedJson):
            serde.load_value({"sort": "tensor", "value": []})

    def test_missing_value_rejected(self):
        with pytest.raises(MalformedJson):
            serde.load_value({"sort": "bool"})

    def test_envelope_must_be_dict(self):
        with pytest.raises(MalformedJson):
            serde.load_value("true")

    def test_every_sort_survives_text(self):
        from ketlab.hsub import span

        values = [2 + 3j, False, ket(0, 2), HOp([[0, 1], [1, 0]]), span([ket(1, 2)], 2)]
        for v in values:
            text = json.dumps(serde.dump_value(v))
            back = serde.load_value(json.loads(text))
            assert serde.dump_value(back) == serde.dump_value(v)
