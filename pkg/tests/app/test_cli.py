"""End-to-end tests of the command-line application."""
import csv
import json

import pytest

from src.app import create_app
from src.enums import ConfigName
from src.services.experiments import stimulated_visibility_law


@pytest.fixture
def app():
    return create_app(ConfigName.TESTING)


def read_csv(path):
    with open(path, newline='', encoding='utf-8') as f:
        return list(csv.DictReader(f))


def error_payload(capsys) -> dict:
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


class TestRun:

    def test_seeded_filter_visibility_curve(self, app, out_dir):
        status = app.main(['run', '--preset', 'filter', '--seeded', '--tau-grid', '0:1:0.25', '--out', str(out_dir)])
        assert status == 0
        rows = read_csv(out_dir / 'visibility_vs_tau.csv')
        assert [float(r['tau']) for r in rows] == [0.0, 0.25, 0.5, 0.75, 1.0]
        for row in rows:
            tau = float(row['tau'])
            assert float(row['visibility']) == pytest.approx(stimulated_visibility_law(tau), abs=1e-9)
            assert float(row['abs_diff']) < 1e-9

        summary = json.loads((out_dir / 'summary.json').read_text())
        assert summary['run']['preset'] == 'filter'
        assert summary['outputs']['visibility-vs-tau']['law'] == "2τ/(1+τ²)"
        assert summary['files'] == ['visibility_vs_tau.csv', 'summary.json']

    def test_identical_configs_give_identical_files(self, app, tmp_path):
        args = ['run', '--preset', 'three-crystal', '--seeded', '--phi-p=pi/3', '--outputs', 'rate,visibility']
        assert app.main(args + ['--out', str(tmp_path / 'first')]) == 0
        assert app.main(args + ['--out', str(tmp_path / 'second')]) == 0
        first = sorted(p.name for p in (tmp_path / 'first').iterdir())
        assert first == sorted(p.name for p in (tmp_path / 'second').iterdir())
        for name in first:
            assert (tmp_path / 'first' / name).read_bytes() == (tmp_path / 'second' / name).read_bytes()

    def test_coupled_phases_beat(self, app, out_dir):
        assert app.main(['run', '--preset', 'three-crystal', '--seeded', '--couple-phases', '--out', str(out_dir)]) == 0
        rows = read_csv(out_dir / 'rate_A.csv')
        assert len(rows) == 401
        rates = [float(r['rate']) for r in rows]
        assert all(r >= 0 for r in rates)
        assert rates[80] != pytest.approx(rates[0], rel=1e-3)

    def test_rate_scan_has_analytic_column(self, app, out_dir):
        assert app.main(['run', '--preset', 'cascade12', '--phi=-pi/2', '--scan', 'phi', '--out', str(out_dir)]) == 0
        rows = read_csv(out_dir / 'rate_A.csv')
        assert set(rows[0]) == {'phi', 'rate', 'analytic', 'abs_diff'}
        assert max(float(r['abs_diff']) for r in rows) < 1e-14

    def test_coincidence_scan_of_filter(self, app, out_dir):
        status = app.main(['run', '--preset', 'filter', '--tau', '0.5', '--coincidence', 'A,D', '--out', str(out_dir)])
        assert status == 0
        assert (out_dir / 'rate_A.csv').exists()
        assert (out_dir / 'coincidence_A_D.csv').exists()

    def test_phase_lock(self, app, out_dir):
        assert app.main(['run', '--phase-lock', '--ensemble', '4', '--out', str(out_dir)]) == 0
        payload = json.loads((out_dir / 'phase_lock.json').read_text())
        assert payload['all_locked'] is True
        assert payload['common_branch'] == payload['reference_branch'] == '+pi/2'
        assert len(payload['members']) == 4
        assert payload['growth_stop'] == 100.0

    def test_json_summary_on_stdout(self, app, out_dir, capsys):
        assert app.main(['run', '--preset', 'cascade13', '--scan', 'phi_p', '--json', '--out', str(out_dir)]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary['outputs']['rate']['visibility'] == pytest.approx(0.0, abs=1e-12)

    def test_plots_are_written_after_the_summary(self, app, out_dir):
        assert app.main(['run', '--preset', 'parallel23', '--seeded', '--plot', '--out', str(out_dir)]) == 0
        summary = json.loads((out_dir / 'summary.json').read_text())
        assert 'rate_A.html' not in summary['files']
        assert '<html>' in (out_dir / 'rate_A.html').read_text()

    @pytest.mark.oracle
    def test_oracle_comparison(self, app, out_dir):
        assert app.main(['run', '--preset', 'cascade12', '--seeded', '--oracle', '--out', str(out_dir)]) == 0
        payload = json.loads((out_dir / 'oracle_compare.json').read_text())
        assert payload['worst_relative'] < 1e-3
        assert payload['gap_scaling']['ratio'] == pytest.approx(4.0, rel=0.2)
        assert (out_dir / 'oracle_scan_A.csv').exists()


class TestErrors:

    def test_invalid_value_exits_with_2(self, app, out_dir, capsys):
        status = app.main(['run', '--preset', 'filter', '--tau', '1.5', '--out', str(out_dir)])
        assert status == 2
        payload = error_payload(capsys)
        assert payload['error'] == 'ConfigError'
        assert [issue['key'] for issue in payload['issues']] == ['tau']
        assert payload['issues'][0]['line'] is None
        assert not out_dir.exists()

    def test_config_file_errors_carry_lines(self, app, tmp_path, capsys):
        config = tmp_path / 'bad.cfg'
        config.write_text("[run]\npreset = nope\nphi_grid = 1:0:0.1\n")
        assert app.main(['validate', '--config', str(config)]) == 2
        assert [issue['line'] for issue in error_payload(capsys)['issues']] == [2, 3]

    def test_missing_config_file(self, app, tmp_path, capsys):
        assert app.main(['validate', '--config', str(tmp_path / 'absent.cfg')]) == 2
        assert error_payload(capsys)['issues'][0]['key'] == 'config'

    def test_computation_error_exits_with_1(self, app, out_dir, capsys):
        status = app.main(['run', '--preset', 'cascade12', '--seeded', '--alpha', '3',
                           '--outputs', 'oracle-compare', '--out', str(out_dir)])
        assert status == 1
        assert error_payload(capsys)['error'] == 'OracleError'

    def test_nothing_to_run(self, app, out_dir):
        assert app.main(['run', '--out', str(out_dir)]) == 2


class TestOtherCommands:

    def test_validate(self, app, capsys):
        assert app.main(['validate', '--preset', 'filter', '--coincidence', 'A,D']) == 0
        result = json.loads(capsys.readouterr().out)
        assert result == {
            'valid': True,
            'preset': 'filter',
            'detectors': ['A', 'D'],
            'outputs': ['rate', 'coincidence'],
        }

    def test_presets(self, app, capsys):
        assert app.main(['presets', '--json']) == 0
        ids = [row['id'] for row in json.loads(capsys.readouterr().out)]
        assert ids == ['cascade12', 'parallel23', 'cascade13', 'three-crystal', 'filter']

    def test_dump_config(self, app, capsys):
        assert app.main(['dump-config', '--preset', 'parallel23', '--gain', '0.02']) == 0
        text = capsys.readouterr().out
        assert text.startswith('[run]\npreset = parallel23\n')
        assert 'gains = 0.02; 0.02; 0.02' in text
