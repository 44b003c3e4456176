"""
Hitchin Harmonic - harmonic maps from the hyperbolic plane into SL(d)/SO(d).

Builds quasi-isometric embeddings H^2 -> Y_d from positive quasisymmetric
boundary data, relaxes them to discrete harmonic maps, and reports numerical
stability certificates.

Package structure:
- shared: configuration, hashing, logging, errors, report export
- hyp2: upper half-plane model, Mobius actions, sections, hitting measures
- spd: the symmetric space Y_d in the SPD model (metric, Busemann, cones)
- flags: full flags, total positivity, normalized triples, projection p_d
- curves: positive curves from piecewise-linear quasisymmetric data
- embedding: f = p_d o phi^3 o s and its coarse constants
- harmonic: meshes, mollification, Dirichlet solver, exhaustion, diagnostics
- stability: Busemann circle averages, certificates, drift proxy
- pipeline: runners behind the CLI subcommands
"""

__all__ = [
    'hyp2',
    'spd',
    'flags',
    'curves',
    'embedding',
    'harmonic',
    'stability',
]

__version__ = '1.0.0'
