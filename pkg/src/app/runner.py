"""
Executes a validated RunConfig and writes its artifacts.

Computations may fan out over worker threads; every file is written here,
in output order, through one ArtifactWriter.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

from src.enums import OutputKind, ScanParameter, SeedTreatment
from src.models.results import ScanResult, VisibilityCurve
from src.services.analytics import GraphingService
from src.services.experiments import (
    PresetTemplate,
    build_preset,
    complementarity,
    make_grid,
    make_parameters,
    phase_grid,
    scan,
    stimulated_visibility_vs_n,
    visibility,
    visibility_vs_tau,
)
from src.services.experiments.visibility import FULL_PERIOD, PERIOD_SLACK
from src.services.fock_oracle import OracleSettings, gap_scaling, oracle_compare, oracle_scan
from src.services.phase_dynamics import REFERENCE_BRANCH, common_branch, ensemble_phases, locking_ensemble
from src.utils import ArtifactWriter, Logger
from .config import Config
from .exceptions import ArtifactError, ConfigError, ConfigIssue
from .networks import check_inline_network, network_at, network_template
from .run_config import GridSpec, RunConfig


DEFAULT_TAU_STEP = 0.05
SUMMARY_FILE = 'summary.json'


@dataclass
class RunContext:
    cfg: RunConfig
    settings: type[Config]
    writer: ArtifactWriter
    workers: Optional[int]
    plots: dict[str, str] = field(default_factory=dict)

    @property
    def treatment(self) -> SeedTreatment:
        return self.cfg.treatment or SeedTreatment.EXACT

    @property
    def pair(self) -> Optional[tuple[str, str]]:
        if self.cfg.coincidence is not None:
            return self.cfg.coincidence
        detectors = self.cfg.detectors
        return (detectors[0], detectors[1]) if len(detectors) >= 2 else None


@dataclass(frozen=True)
class RunReport:
    summary: dict[str, Any]
    written: tuple[Path, ...]


def oracle_settings(settings: type[Config]) -> OracleSettings:
    return OracleSettings(
        unseeded_cutoff=settings.ORACLE_UNSEEDED_CUTOFF,
        basis_budget=settings.ORACLE_BASIS_BUDGET,
        leakage_tolerance=settings.ORACLE_LEAKAGE_TOLERANCE,
        series_tolerance=settings.ORACLE_SERIES_TOLERANCE,
        poisson_tail=settings.ORACLE_POISSON_TAIL,
    )


def _grid(spec: GridSpec) -> tuple[float, ...]:
    # rounding may push the last point just past stop
    return tuple(min(v, spec.stop) for v in make_grid(spec.start, spec.stop, spec.step))


def scan_grid(cfg: RunConfig, settings: type[Config]) -> tuple[float, ...]:
    """Grid of the scanned parameter: the configured one or the default for that parameter."""
    if cfg.scan == ScanParameter.PHI:
        if cfg.phi_grid is not None:
            return _grid(cfg.phi_grid)
        periods = settings.COUPLED_PERIODS if cfg.parameters.couple_phases else 1
        return phase_grid(settings.PHASE_POINTS, periods=periods)
    if cfg.scan == ScanParameter.PHI_P:
        return _grid(cfg.phi_p_grid) if cfg.phi_p_grid is not None else phase_grid(settings.PHASE_POINTS)
    return _grid(cfg.tau_grid) if cfg.tau_grid is not None else make_grid(0.0, 1.0, DEFAULT_TAU_STEP)


def validate_run(cfg: RunConfig) -> list[ConfigIssue]:
    """Problems only visible once the network is built: unknown detectors and inline component errors."""
    issues = check_inline_network(cfg)
    detectors = cfg.detectors
    needs_detector = any(o in (OutputKind.DETECTOR_RATE, OutputKind.VISIBILITY) for o in cfg.outputs)
    if needs_detector and detectors and cfg.detector not in detectors:
        issues.append(ConfigIssue(None, 'detector',
                                  f"unknown detector '{cfg.detector}' (defined: {', '.join(detectors)})"))
    if OutputKind.COINCIDENCE in cfg.outputs and len(detectors) < 2:
        issues.append(ConfigIssue(None, 'coincidence', "coincidence output needs two detectors"))
    return issues


# ----------------------------------------------------------------------
# Outputs
# ----------------------------------------------------------------------

def _visibility_summary(result: ScanResult) -> dict[str, Any]:
    periodic = result.parameter in (ScanParameter.PHI, ScanParameter.PHI_P)
    if len(result) < 3 or (periodic and result.span < FULL_PERIOD * (1.0 - PERIOD_SLACK)):
        return {}
    report = visibility(result)
    summary = {'visibility': report.visibility, 'r_max': report.r_max, 'r_min': report.r_min}
    if report.fit_period is not None:
        summary.update({'fit_period': report.fit_period, 'fit_phase': report.fit_phase})
    return summary


def _write_scan(ctx: RunContext, name: str, result: ScanResult) -> dict[str, Any]:
    header = [result.parameter.value, 'rate']
    if result.analytic is not None:
        header += ['analytic', 'abs_diff']
        rows = [(x, r, a, abs(r - a)) for x, r, a in zip(result.grid, result.rates, result.analytic)]
    else:
        rows = list(zip(result.grid, result.rates))
    path = ctx.writer.write_csv(f"{name}.csv", header, rows)

    summary = {
        'file': path.name,
        'points': len(result),
        'parameter': result.parameter.value,
        'metadata': result.metadata,
        **_visibility_summary(result),
    }
    if result.analytic is not None:
        summary['max_abs_diff'] = max(abs(r - a) for r, a in zip(result.rates, result.analytic))
    if ctx.cfg.plot:
        ctx.plots[name] = GraphingService.create_scan_chart(result, name.replace('_', ' '))
    return summary


def _run_scan(ctx: RunContext, coincidence: Optional[tuple[str, str]]) -> ScanResult:
    cfg = ctx.cfg
    return scan(
        network_template(cfg),
        cfg.scan,
        scan_grid(cfg, ctx.settings),
        detector=cfg.detector,
        coincidence=coincidence,
        treatment=ctx.treatment,
        workers=ctx.workers,
    )


def _rate_output(ctx: RunContext) -> dict[str, Any]:
    return _write_scan(ctx, f"rate_{ctx.cfg.detector}", _run_scan(ctx, None))


def _coincidence_output(ctx: RunContext) -> dict[str, Any]:
    a, b = ctx.pair
    return _write_scan(ctx, f"coincidence_{a}_{b}", _run_scan(ctx, (a, b)))


def _visibility_output(ctx: RunContext) -> dict[str, Any]:
    result = _run_scan(ctx, ctx.cfg.coincidence)
    summary = _visibility_summary(result)
    if not summary:
        raise ConfigError([ConfigIssue(None, 'outputs',
                                       f"visibility needs a {result.parameter} grid spanning a full period")])
    return summary


def _write_curve(ctx: RunContext, name: str, curve: VisibilityCurve) -> dict[str, Any]:
    with_reference = all(p.reference is not None for p in curve.points)
    header = [curve.variable, 'visibility']
    if with_reference:
        header += ['reference', 'abs_diff']
        rows = [(p.x, p.visibility, p.reference, p.difference) for p in curve.points]
    else:
        rows = [(p.x, p.visibility) for p in curve.points]
    path = ctx.writer.write_csv(f"{name}.csv", header, rows)

    summary = {'file': path.name, 'points': len(curve.points), 'law': curve.law, 'metadata': curve.metadata}
    if with_reference:
        summary['max_abs_diff'] = curve.max_difference()
    if ctx.cfg.plot:
        ctx.plots[name] = GraphingService.create_visibility_chart(curve, name.replace('_', ' '))
    return summary


def _visibility_vs_tau_output(ctx: RunContext) -> dict[str, Any]:
    cfg = ctx.cfg
    curve = visibility_vs_tau(
        seeded=cfg.parameters.seeded,
        coincidence=cfg.coincidence is not None,
        tau_grid=_grid(cfg.tau_grid),
        parameters=cfg.parameters,
        treatment=cfg.treatment,
        phi_points=ctx.settings.PHASE_POINTS,
        workers=ctx.workers,
    )
    return _write_curve(ctx, 'visibility_vs_tau', curve)


def _visibility_vs_n_output(ctx: RunContext) -> dict[str, Any]:
    cfg = ctx.cfg
    curve = stimulated_visibility_vs_n(
        _grid(cfg.n_grid),
        preset=cfg.preset,
        parameters=cfg.parameters,
        phi_points=ctx.settings.PHASE_POINTS,
        workers=ctx.workers,
    )
    return _write_curve(ctx, 'visibility_vs_n', curve)


def _phase_lock_output(ctx: RunContext) -> dict[str, Any]:
    cfg = ctx.cfg
    reports = locking_ensemble(
        ensemble_phases(cfg.ensemble),
        growth=cfg.growth,
        tol=ctx.settings.INTEGRATOR_TOLERANCE,
        samples=ctx.settings.INTEGRATOR_SAMPLES,
        workers=ctx.workers,
    )
    branch = common_branch(reports)
    members = [
        {
            'initial_delta_theta': r.initial_delta_theta,
            'z_lock': r.z_lock,
            'delta_theta_limit': r.delta_theta_limit,
            'branch': r.branch.value,
            'growth': r.growth,
            'final_cos': r.final_cos,
            'drift': r.drift,
            'steps': r.steps,
        }
        for r in reports
    ]
    payload = {
        'members': members,
        'common_branch': branch.value,
        'reference_branch': REFERENCE_BRANCH.value,
        'all_locked': all(r.locked for r in reports),
        'max_drift': max(r.drift for r in reports),
        'growth_stop': cfg.growth,
    }
    path = ctx.writer.write_json('phase_lock.json', payload)
    if ctx.cfg.plot:
        ctx.plots['phase_lock'] = GraphingService.create_locking_chart([r.trajectory for r in reports])
    return {'file': path.name, **{k: v for k, v in payload.items() if k != 'members'}}


def _scaled_preset(cfg: RunConfig) -> Callable[[float], Any]:
    """Builder of the configured preset with every gain rescaled so the largest has modulus ``c``."""
    p = cfg.parameters
    largest = max(abs(g) for g in p.gains)

    def build(c: float):
        gains = tuple(g * c / largest for g in p.gains)
        return build_preset(cfg.preset, make_parameters(**{**p.model_dump(), 'gains': gains}))
    return build


def _oracle_output(ctx: RunContext) -> dict[str, Any]:
    cfg = ctx.cfg
    settings = oracle_settings(ctx.settings)
    wants_pair = cfg.coincidence is not None or OutputKind.COINCIDENCE in cfg.outputs
    pairs = (ctx.pair,) if wants_pair and ctx.pair is not None else ()
    comparison = oracle_compare(network_at(cfg), pairs, settings)
    oracle = comparison.oracle
    payload: dict[str, Any] = {
        'gaps': [
            {'quantity': g.quantity, 'engine': g.engine, 'oracle': g.oracle,
             'absolute': g.absolute, 'relative': g.relative}
            for g in comparison.gaps
        ],
        'worst_relative': comparison.worst_relative(),
        'basis': oracle.basis,
        'dimension': oracle.dimension,
        'leakage': oracle.leakage,
        'norm_deviation': oracle.norm_deviation,
        'series_terms': oracle.series_terms,
    }

    if cfg.preset is not None and any(g != 0 for g in cfg.parameters.gains):
        gain = max(abs(g) for g in cfg.parameters.gains)
        full, half = gap_scaling(_scaled_preset(cfg), gain, cfg.detector, settings)
        payload['gap_scaling'] = {
            'gain': gain,
            'relative_gap': full,
            'relative_gap_half_gain': half,
            'ratio': full / half if half > 0 else None,
        }

    if cfg.scan in (ScanParameter.PHI, ScanParameter.PHI_P):
        template = network_template(cfg)
        factory = template.bind if isinstance(template, PresetTemplate) else template
        grid = phase_grid(ctx.settings.ORACLE_SCAN_POINTS)
        oracle_result = oracle_scan(factory, cfg.scan, grid, cfg.detector, settings=settings, workers=ctx.workers)
        engine_result = scan(template, cfg.scan, grid, detector=cfg.detector, workers=ctx.workers)
        rows = [(x, e, o, abs(e - o)) for x, e, o in zip(grid, engine_result.rates, oracle_result.rates)]
        path = ctx.writer.write_csv(f"oracle_scan_{cfg.detector}.csv", [cfg.scan.value, 'rate', 'oracle', 'abs_diff'], rows)
        payload['scan'] = {
            'file': path.name,
            'engine_visibility': visibility(engine_result, fit=False).visibility,
            'oracle_visibility': visibility(oracle_result, fit=False).visibility,
        }
        if cfg.plot:
            ctx.plots['oracle_scan'] = GraphingService.create_scan_chart(
                engine_result, f"oracle scan {cfg.detector}", oracle=oracle_result)

    path = ctx.writer.write_json('oracle_compare.json', payload)
    return {'file': path.name, 'worst_relative': payload['worst_relative'], **(
        {'gap_scaling': payload['gap_scaling']} if 'gap_scaling' in payload else {})}


def _complementarity_output(ctx: RunContext) -> dict[str, Any]:
    cfg = ctx.cfg
    taus = _grid(cfg.tau_grid) if cfg.tau_grid is not None else (cfg.parameters.tau,)
    reports = [complementarity(t, cfg.parameters, ctx.settings.PHASE_POINTS, ctx.workers) for t in taus]
    rows = [
        (r.tau, r.idler_overlap.real, r.idler_overlap.imag, r.distinguishability, r.visibility, r.bound)
        for r in reports
    ]
    header = ['tau', 'overlap_re', 'overlap_im', 'distinguishability', 'visibility', 'bound']
    path = ctx.writer.write_csv('complementarity.csv', header, rows)
    return {
        'file': path.name,
        'points': len(reports),
        'satisfied': all(r.satisfied for r in reports),
        'max_bound': max(r.bound for r in reports),
    }


OUTPUTS: dict[OutputKind, Callable[[RunContext], dict[str, Any]]] = {
    OutputKind.DETECTOR_RATE: _rate_output,
    OutputKind.COINCIDENCE: _coincidence_output,
    OutputKind.VISIBILITY: _visibility_output,
    OutputKind.VISIBILITY_VS_TAU: _visibility_vs_tau_output,
    OutputKind.VISIBILITY_VS_N: _visibility_vs_n_output,
    OutputKind.PHASE_LOCK: _phase_lock_output,
    OutputKind.ORACLE_COMPARE: _oracle_output,
    OutputKind.COMPLEMENTARITY: _complementarity_output,
}


def _run_header(cfg: RunConfig) -> dict[str, Any]:
    p = cfg.parameters
    return {
        'preset': cfg.preset.value if cfg.preset else None,
        'name': cfg.name,
        'seeded': p.seeded,
        'alpha': complex(p.alpha),
        'gains': [complex(g) for g in p.gains],
        'tau': p.tau,
        'theta': p.theta,
        'treatment': cfg.treatment.value if cfg.treatment else None,
        'outputs': [o.value for o in cfg.outputs],
    }


def run(cfg: RunConfig, settings: type[Config] = Config, workers: Optional[int] = None) -> RunReport:
    """
    Run every requested output and write its artifacts plus ``summary.json``
    to ``cfg.out``. Identical configurations produce byte-identical files.
    """
    issues = validate_run(cfg)
    if issues:
        raise ConfigError(issues)
    if not cfg.outputs:
        raise ConfigError([ConfigIssue(None, 'outputs', "nothing to run: no outputs requested")])

    workers = workers if workers is not None else (settings.THREADS or None)
    ctx = RunContext(cfg=cfg, settings=settings, writer=ArtifactWriter(cfg.out), workers=workers)
    Logger.info(f"Run of {cfg.preset or cfg.name or 'inline network'}: {', '.join(o.value for o in cfg.outputs)}")

    results = {}
    try:
        for output in cfg.outputs:
            results[output.value] = OUTPUTS[output](ctx)
        summary = {'run': _run_header(cfg), 'outputs': results}
        summary['files'] = [path.name for path in ctx.writer.written] + [SUMMARY_FILE]
        ctx.writer.write_json(SUMMARY_FILE, summary)
        for name, html in ctx.plots.items():
            ctx.writer.write_text(f"{name}.html", html)
    except OSError as e:
        raise ArtifactError(f"Cannot write artifacts to {cfg.out}: {e}") from e

    Logger.info(f"Run finished: {len(ctx.writer.written)} file(s) in {cfg.out}")
    return RunReport(summary=summary, written=tuple(ctx.writer.written))
