"""Step 4: Kahler-Einstein obstruction sweep over small coprime weights."""

from pathlib import Path

import pandas as pd

from src.residue_futaki.analysis import obstruction_sweep
from src.residue_futaki.utils import csv_exists, read_csv, write_csv


def run_weight_sweep(output_path: Path, max_weight: int = 10, seed: int = 0) -> bool:
    """Sweep pairwise-coprime weights up to ``max_weight`` and save the verdicts.

    Every triple other than (1,1,1) must come out OBSTRUCTED. When a previous
    sweep exists at ``output_path``, changed verdicts are reported.
    """
    print("-" * 80)
    print(f" 🧭 Step 4: Sweeping weights up to {max_weight}...")

    df = obstruction_sweep(max_weight, seed)
    unobstructed = df[df['verdict'] != 'OBSTRUCTED']
    print(f"📊 {len(df)} weight triples, {len(df) - len(unobstructed)} obstructed")

    if csv_exists(output_path):
        _report_changes(read_csv(output_path), df)

    if write_csv(df, output_path):
        print(f"💾 Saved {output_path}")
    else:
        print(f"⚠️  Could not save {output_path}")

    if not unobstructed.empty:
        for _, row in unobstructed.iterrows():
            print(f"❌ No witness for w=({row['w0']},{row['w1']},{row['w2']})")
        return False
    print("✅ All swept weights are obstructed")
    return True


def _report_changes(previous: pd.DataFrame | None, current: pd.DataFrame) -> None:
    """Print triples whose verdict differs from the previous run."""
    if previous is None or previous.empty:
        return
    key = ['w0', 'w1', 'w2']
    current = current.astype({k: str for k in key})
    merged = previous.merge(current, on=key, how='inner', suffixes=('_old', '_new'))
    changed = merged[merged['verdict_old'] != merged['verdict_new']]
    if changed.empty:
        print("ℹ️  Verdicts unchanged since the previous sweep")
        return
    for _, row in changed.iterrows():
        print(f"⚠️  w=({row['w0']},{row['w1']},{row['w2']}): {row['verdict_old']} -> {row['verdict_new']}")
