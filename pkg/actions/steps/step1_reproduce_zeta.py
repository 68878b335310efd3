"""Step 1: Reproduce the symbolic obstruction polynomial from the reference listing."""

from pathlib import Path

from src.residue_futaki.analysis import zeta
from src.residue_futaki.core.exprio import WPS_PARAM_VARS, WPS_WEIGHT_VARS, parse_poly

REFERENCE = Path(__file__).parent.parent.parent / "scripts" / "testing" / "fixtures" / "symbolic_zeta.txt"


def reproduce_symbolic_zeta(reference: Path = REFERENCE) -> bool:
    """Compare zeta over symbolic weights with the reference listing, term by term.

    Returns:
        True when both polynomials are identical.
    """
    print("-" * 80)
    print(" 🧮 Step 1: Reproducing symbolic zeta...")

    expected = parse_poly(reference.read_text(), WPS_PARAM_VARS + WPS_WEIGHT_VARS)
    computed = zeta(None).zeta
    print(f"📄 Reference listing: {len(expected)} terms")
    print(f"🔢 Computed: {len(computed)} terms")

    difference = computed - expected
    if not difference.is_zero():
        print(f"❌ {len(difference)} terms differ, first: {difference.sorted_terms()[0]}")
        return False
    print("✅ Symbolic zeta matches the reference listing")
    return True
