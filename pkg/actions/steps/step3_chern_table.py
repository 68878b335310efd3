"""Step 3: Chern numbers of P^2_w by residues against the Euler-sequence values."""

from fractions import Fraction

import pandas as pd

from src.residue_futaki.analysis import Weights, chern_number_wps
from src.residue_futaki.core.arith import format_rational
from src.residue_futaki.core.futaki import InvariantPolynomial
from src.residue_futaki.errors import ResidueFutakiError

TABLE_WEIGHTS = [(1, 1, 1), (1, 1, 2), (1, 2, 3), (2, 3, 5)]


def build_chern_table(weights: list[tuple[int, int, int]] = TABLE_WEIGHTS) -> pd.DataFrame | None:
    """c1^2 and c2 for each weight triple.

    Returns:
        DataFrame with columns w, c1^2, c2 (None on the first mismatch)
    """
    print("-" * 80)
    print(" 📐 Step 3: Computing Chern numbers...")

    c1_squared = InvariantPolynomial.parse('c1^2', 2)
    c2 = InvariantPolynomial.parse('c2', 2)
    rows = []
    for triple in weights:
        w = Weights(*triple)
        try:
            c1sq_value = chern_number_wps(w, c1_squared)
            c2_value = chern_number_wps(w, c2)
        except ResidueFutakiError as e:
            print(f"❌ w=({w}): {e}")
            return None
        # closed forms |w|^2 / (w0 w1 w2) and sum 1/w_i
        if c1sq_value != Fraction(w.total ** 2, w.w0 * w.w1 * w.w2) or c2_value != sum(Fraction(1, x) for x in w):
            print(f"❌ w=({w}): c1^2={c1sq_value}, c2={c2_value}")
            return None
        rows.append({'w': str(w), 'c1^2': format_rational(c1sq_value), 'c2': format_rational(c2_value)})

    df = pd.DataFrame(rows)
    print(df.to_string(index=False))
    print("✅ Chern numbers match")
    return df
