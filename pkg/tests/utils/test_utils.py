"""Tests for artifact formatting and the ordered worker map."""
import json
import math

import pytest

from src.utils import ArtifactWriter, format_number, ordered_map, worker_count


class TestFormatNumber:

    @pytest.mark.parametrize('value', [0.1, 1 / 3, math.pi, 1e-300, -2.5e7])
    def test_floats_read_back_exactly(self, value):
        assert float(format_number(value)) == value

    def test_cells(self):
        assert format_number(None) == ''
        assert format_number(True) == 'true'
        assert format_number(3) == '3'
        assert format_number('A') == 'A'

    @pytest.mark.parametrize('value', [math.nan, math.inf, -math.inf])
    def test_non_finite_values_are_rejected(self, value):
        with pytest.raises(ValueError):
            format_number(value)


class TestArtifactWriter:

    def test_csv_rows_in_order(self, out_dir):
        writer = ArtifactWriter(out_dir)
        path = writer.write_csv('rate_A.csv', ['phi', 'rate'], [(0.0, 1e-4), (0.5, 2e-4)])
        assert path.read_text() == 'phi,rate\n0,0.0001\n0.5,0.0002\n'
        assert writer.written == [path]

    def test_row_width_must_match_header(self, out_dir):
        with pytest.raises(ValueError):
            ArtifactWriter(out_dir).write_csv('bad.csv', ['a', 'b'], [(1,)])

    def test_json_is_sorted_with_complex_pairs(self, out_dir):
        path = ArtifactWriter(out_dir).write_json('x.json', {'b': 1 + 2j, 'a': [0.5]})
        text = path.read_text()
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {'a': [0.5], 'b': [1.0, 2.0]}

    def test_json_rejects_nan(self, out_dir):
        with pytest.raises(ValueError):
            ArtifactWriter.render_json({'v': math.nan})

    def test_nothing_is_created_before_a_write(self, out_dir):
        ArtifactWriter(out_dir)
        assert not out_dir.exists()


class TestWorkers:

    def test_results_keep_input_order(self):
        assert ordered_map(lambda x: x * x, range(20), workers=4) == [x * x for x in range(20)]

    def test_single_worker(self):
        assert ordered_map(str, [3, 1, 2], workers=1) == ['3', '1', '2']

    def test_worker_count_is_positive(self):
        assert worker_count(3) == 3
        assert worker_count() >= 1
