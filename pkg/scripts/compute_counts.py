"""Recompute the enumeration counts and write results/enumeration_counts.json."""
import argparse
import json
from pathlib import Path

from pamono.enumeration import Dedup, Emit, EnumerationRequest, Mode, enumerate_double, enumerate_pm

ROOT = Path(__file__).resolve().parent.parent


def counts(max_pm: int, max_double: int) -> dict:
    out = {"pm_labelled": {}, "pm_up_to_iso": {}, "double_labelled": {}, "double_up_to_iso": {}}
    for k in range(1, max_pm + 1):
        out["pm_labelled"][str(k)] = enumerate_pm(EnumerationRequest(k, emit=Emit.COUNT_ONLY)).count
        req = EnumerationRequest(k, dedup=Dedup.UP_TO_ISO, emit=Emit.COUNT_ONLY)
        out["pm_up_to_iso"][str(k)] = enumerate_pm(req).count
    for k in range(1, max_double + 1):
        req = EnumerationRequest(k, mode=Mode.DOUBLE, emit=Emit.COUNT_ONLY)
        out["double_labelled"][str(k)] = enumerate_double(req).count
        req = EnumerationRequest(k, mode=Mode.DOUBLE, dedup=Dedup.UP_TO_ISO, emit=Emit.COUNT_ONLY)
        out["double_up_to_iso"][str(k)] = enumerate_double(req).count
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-pm", type=int, default=4)
    ap.add_argument("--max-double", type=int, default=3)
    ap.add_argument("--out", type=Path, default=ROOT / "results" / "enumeration_counts.json")
    args = ap.parse_args()
    data = counts(args.max_pm, args.max_double)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(data, indent=2) + "\n")
    print(json.dumps(data, indent=2))


if __name__ == "__main__":
    main()
