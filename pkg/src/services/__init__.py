"""
Services Module.

Computation services for pdcnet. Each service is a package with its own
public API, exceptions and README:

- mode_algebra: normally ordered bosonic operator expressions
- network: first-order compilation of interferometer networks and rates
- experiments: presets, closed forms, scans and visibility curves
- fock_oracle: truncated Fock-space verification of the rates
- phase_dynamics: three-wave-mixing integration and phase locking
- analytics: optional HTML plots
"""
