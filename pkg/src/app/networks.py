"""
Networks described by a run configuration: presets, or inline component
lists whose placeholders are bound at every scan point.
"""

import math
from typing import Any, Optional

from src.enums import ComponentKind, ModeKind, ScanParameter
from src.models.components import NetworkSpec
from src.models.modes import StateSpec
from src.services.experiments import PresetParameters, PresetTemplate, build_preset
from src.services.experiments.scanning import NetworkTemplate
from src.services.network import NetworkBuilder, NetworkError, PropagationState, apply_component
from .exceptions import ConfigIssue
from .run_config import NetworkDefinition, RunConfig


def resolve(value: Any, p: PresetParameters) -> Any:
    """Bind a ``$name`` placeholder to the parameter value; other values pass through."""
    if not isinstance(value, str) or not value.startswith('$'):
        return value
    return {
        '$phi': p.phi,
        '$phi_p': p.pump_phase,
        '$tau': p.tau,
        '$theta': p.theta,
    }[value]


def _add(builder: NetworkBuilder, kind: ComponentKind, values: dict, p: PresetParameters) -> None:
    v = {key: resolve(value, p) for key, value in values.items()}
    if kind == ComponentKind.CRYSTAL:
        builder.crystal(v['signal'], v['idler'], v['gain'], v.get('pump_phase', 0.0))
    elif kind == ComponentKind.PHASE:
        builder.phase(v['mode'], v['phi'])
    elif kind == ComponentKind.MIRROR:
        builder.mirror(v['mode'])
    elif kind == ComponentKind.FILTER:
        theta = v.get('theta', 0.0)
        builder.filter(v['mode'], v['tau'] * complex(math.cos(theta), math.sin(theta)), v['ancilla'])
    elif kind == ComponentKind.SEED:
        builder.seed(v['mode'], v['alpha'])
    elif kind == ComponentKind.COMBINER:
        if 'weights' in v:
            builder.combiner(v['inputs'], v['output'], weights=v['weights'])
        else:
            builder.combiner(v['inputs'], v['output'], style=v.get('style', p.combiner))
    elif kind == ComponentKind.DETECTOR:
        builder.detector(v['name'], v['mode'])


def build_inline_network(
    definition: NetworkDefinition,
    p: PresetParameters,
    name: Optional[str] = None,
    max_field_order: int = 1,
    max_product_order: int = 2,
) -> NetworkSpec:
    builder = NetworkBuilder(name)
    for label, kind in definition.modes:
        builder.mode(label, ModeKind(kind))
    for component in definition.components:
        _add(builder, component.kind, component.values, p)
    builder.orders(max_field_order, max_product_order)
    initial = StateSpec.coherent(dict(definition.initial)) if definition.initial else None
    return builder.build(initial)


def network_template(cfg: RunConfig) -> NetworkTemplate:
    """Scan template for the configured network."""
    if cfg.preset is not None:
        return PresetTemplate(cfg.preset, cfg.parameters)

    def bind(parameter: ScanParameter, value: float) -> NetworkSpec:
        return build_inline_network(
            cfg.network,
            cfg.parameters.bind(parameter, value),
            cfg.name,
            cfg.max_field_order,
            cfg.max_product_order,
        )
    return bind


def network_at(cfg: RunConfig) -> NetworkSpec:
    """The configured network at the fixed parameter values."""
    if cfg.preset is not None:
        return build_preset(cfg.preset, cfg.parameters)
    return build_inline_network(cfg.network, cfg.parameters, cfg.name, cfg.max_field_order, cfg.max_product_order)


def check_inline_network(cfg: RunConfig) -> list[ConfigIssue]:
    """
    Build and propagate the inline network component by component so each
    problem is reported against the component that caused it.
    """
    definition = cfg.network
    if definition is None:
        return []
    issues = []
    builder = NetworkBuilder(cfg.name)
    for label, kind in definition.modes:
        builder.mode(label, ModeKind(kind))
    for component in definition.components:
        try:
            _add(builder, component.kind, component.values, cfg.parameters)
        except NetworkError as e:
            issues.append(ConfigIssue(None, f"component.{component.index}", str(e)))
    if issues:
        return issues

    try:
        spec = builder.build()
    except NetworkError as e:
        return [ConfigIssue(None, 'network', str(e))]
    state = PropagationState.initial(spec.modes, max_order=spec.max_field_order)
    for component, entry in zip(spec.components, definition.components):
        try:
            state = apply_component(state, component)
        except NetworkError as e:
            issues.append(ConfigIssue(None, f"component.{entry.index}", str(e)))
            break
    return issues
