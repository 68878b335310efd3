"""Step 2: Futaki character vanishes on P^2 for random generic fields."""

import random

from src.residue_futaki.analysis import TorusFieldParams, Weights, futaki_wps, validate_params


def check_fano_plane(samples: int = 20, seed: int = 0) -> bool:
    """Evaluate f(xi_a) on P^2 = P^2_(1,1,1) for ``samples`` seeded generic a."""
    print("-" * 80)
    print(" 🔍 Step 2: Fano sanity check on P^2...")

    rng = random.Random(seed)
    w = Weights(1, 1, 1)
    failures = []
    checked = 0
    while checked < samples:
        a = TorusFieldParams.of(*(rng.randint(-9, 9) for _ in range(3)))
        if validate_params(w, a):
            continue
        value = futaki_wps(w, a).value
        if value != 0:
            failures.append((a, value))
        checked += 1

    for a, value in failures:
        print(f"❌ f(xi_a) = {value} for a=({a})")
    if failures:
        return False
    print(f"✅ f(xi_a) = 0 for all {samples} fields")
    return True
