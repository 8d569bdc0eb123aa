"""Hypothesis strategies for operator expressions and small networks."""
from hypothesis import strategies as st

from src.enums import CombinerStyle
from src.services.mode_algebra import OperatorExpr
from src.services.network import NetworkBuilder


MODE_LABELS = ('a', 'b', 'c')

small_complex = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False).map(
    lambda z: complex(round(z.real, 6), round(z.imag, 6))
)


@st.composite
def monomials(draw, labels=MODE_LABELS, max_power: int = 2) -> OperatorExpr:
    """One normally ordered monomial with a random coefficient."""
    creators = OperatorExpr.identity()
    annihilators = OperatorExpr.identity()
    for label in labels:
        for _ in range(draw(st.integers(0, max_power))):
            creators = creators * OperatorExpr.creator(label)
        for _ in range(draw(st.integers(0, max_power))):
            annihilators = annihilators * OperatorExpr.annihilator(label)
    return (creators * annihilators).scaled(draw(small_complex))


@st.composite
def expressions(draw, max_terms: int = 3) -> OperatorExpr:
    terms = draw(st.lists(monomials(), min_size=1, max_size=max_terms))
    total = OperatorExpr.zero()
    for term in terms:
        total = total + term
    return total


@st.composite
def small_networks(draw, max_components: int = 6):
    """
    Random networks of at most ``max_components`` components over two
    signal and two idler modes, ending in a detector on s1.
    """
    builder = NetworkBuilder('random')
    builder.signal('s1', 's2').idler('i1', 'i2')
    ancillas = 0
    combined = False
    for _ in range(draw(st.integers(1, max_components - 1))):
        kind = draw(st.sampled_from(['crystal', 'phase', 'mirror', 'filter', 'seed', 'combiner']))
        if kind == 'crystal':
            signal = draw(st.sampled_from(['s1'] if combined else ['s1', 's2']))
            builder.crystal(signal, draw(st.sampled_from(['i1', 'i2'])),
                            draw(st.floats(0.0, 0.05)), draw(st.floats(-3.2, 3.2)))
        elif kind == 'phase':
            builder.phase(draw(st.sampled_from(['s1', 'i1'])), draw(st.floats(-3.2, 3.2)))
        elif kind == 'mirror':
            builder.mirror('s1')
        elif kind == 'filter':
            ancillas += 1
            builder.filter(draw(st.sampled_from(['i1', 'i2'])), draw(st.floats(0.0, 1.0)), f"l{ancillas}")
        elif kind == 'seed':
            builder.seed(draw(st.sampled_from(['i1', 'i2'])), draw(st.floats(-1.5, 1.5)))
        elif not combined:
            builder.combiner(('s1', 's2'), 's1', style=draw(st.sampled_from(list(CombinerStyle))))
            combined = True
    builder.detector('A', 's1')
    return builder.build()

