"""Predicted QFT execution time and gate speed for each hardware format.

    python scripts/reproduce_qft_table.py [--power 0.81]
"""

import argparse

from wfemu.circuits import build_qft
from wfemu.costmodel import PowerProfile, predict, profile_for

# published measurements: format -> (qubits, seconds, NGS)
MEASURED = {
    "fp16": (18, 8.90, 4.19e-8),
    "fp32": (17, 4.30, 4.55e-8),
    "fx16": (18, 4.90, 2.31e-8),
    "fx24": (17, 2.41, 2.52e-8),
    "fx32": (17, 2.81, 2.97e-8),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--power", type=float, default=0.81, help="board power in watts")
    args = ap.parse_args()

    print("| format | n | gates | cycles | time_s | measured | rel.err | ngs | measured | pdp_j |")
    print("|---|---|---|---|---|---|---|---|---|---|")
    for fmt, (n, t_meas, ngs_meas) in MEASURED.items():
        r = predict(build_qft(n), profile_for(fmt), PowerProfile(args.power))
        err = (r.time_s - t_meas) / t_meas
        print(f"| {fmt} | {n} | {r.gates} | {r.total_cycles} | {r.time_s:.3f} | {t_meas:.2f} | {err:+.1%} "
              f"| {r.ngs:.3e} | {ngs_meas:.2e} | {r.pdp_joules:.3f} |")


if __name__ == "__main__":
    main()
