#!/usr/bin/env python3
"""Regenerates the synthetic fixtures under data/fixtures.

Distributions are Weibull speed marginals (integrated exactly over 1 m/s bins,
tail folded into the open top bin) times a von Mises-like direction rose.
Observation files are seeded draws. Output is deterministic.
"""

import json
import math
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "data" / "fixtures"

SECTORS = 12
MAX_SPEED = 40


def weibull_bins(scale, shape):
    cdf = lambda u: 1.0 - math.exp(-((u / scale) ** shape))
    p = [cdf(u + 1) - cdf(u) for u in range(MAX_SPEED)]
    p[-1] += 1.0 - cdf(MAX_SPEED)
    total = sum(p)
    return [v / total for v in p]


def rose(peaks, floor):
    """peaks: list of (direction_deg, weight, concentration)."""
    w = []
    for s in range(SECTORS):
        d = math.radians(s * 360.0 / SECTORS)
        v = floor
        for centre, weight, kappa in peaks:
            v += weight * math.exp(kappa * (math.cos(d - math.radians(centre)) - 1.0))
        w.append(v)
    total = sum(w)
    return [v / total for v in w]


def distribution(p_theta, p_u):
    return {
        "reference_height": 80.0,
        "sector_count": SECTORS,
        "sector_width": 360.0 / SECTORS,
        "speed_bin_edges": [float(u) for u in range(MAX_SPEED + 1)],
        "p_theta": p_theta,
        "p_u": p_u,
        "joint": [[a * b for b in p_u] for a in p_theta],
        "mode": "product_of_marginals",
    }


def write_json(name, doc):
    (OUT / name).write_text(json.dumps(doc, indent=2) + "\n")


def ndbc_fixtures():
    header = "#YY  MM DD hh mm WDIR WSPD GST  WVHT   DPD   APD MWD   PRES  ATMP  WTMP  DEWP  VIS PTDY  TIDE\n"
    units = "#yr  mo dy hr mn degT m/s  m/s     m   sec   sec degT   hPa  degC  degC  degC  nmi  hPa    ft\n"
    rows = [
        ("2021 01 01 00 00", "270", "8.2"),
        ("2021 01 01 01 00", "265", "7.9"),
        ("2021 01 01 02 00", "999", "7.5"),   # missing direction
        ("2021 01 01 03 00", "250", "99.0"),  # missing speed
        ("2021 01 01 04 00", "240", "6.1"),
        ("2021 01 01 05 00", "MM", "MM"),     # missing both
        ("2021 01 01 06 00", "  5", "5.0"),
        ("2021 01 01 07 00", "359", "4.4"),
        ("2021 01 01 08 00", "180", "0.0"),
        ("2021 01 01 09 00", " 90", "12.6"),
    ]
    tail = "  9.2  1.21  9.00  4.80 270 1012.3  11.2  12.0   9.1 99.0 -0.3 99.00"
    text = header + units + "".join(f"{t} {d:>3} {s:>4}{tail}\n" for t, d, s in rows)
    (OUT / "ndbc_10rows.txt").write_text(text)

    sentinel = header + units + "".join(
        f"2021 02 01 {h:02d} 00 999 99.0{tail}\n" for h in range(6))
    (OUT / "ndbc_all_missing.txt").write_text(sentinel)


def hourly_csv():
    rng = random.Random(20210101)
    lines = ["timestamp,speed_mps,direction_deg,height_m"]
    for hour in range(8760):
        day, hh = divmod(hour, 24)
        # 2021 is not a leap year; step through month lengths.
        month, d = 1, day
        for length in (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31):
            if d < length:
                break
            d -= length
            month += 1
        speed = rng.weibullvariate(8.0, 2.0)
        direction = (rng.vonmisesvariate(math.radians(300.0), 1.5) * 180.0 / math.pi) % 360.0
        lines.append(f"2021-{month:02d}-{d + 1:02d}T{hh:02d}:00:00Z,{speed:.2f},{direction:.1f},4.1")
    (OUT / "synthetic_8760h.csv").write_text("\n".join(lines) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    # Pacific-coast-like: strong NW prevailing wind, moderate speeds.
    write_json("ca_offshore.json",
               distribution(rose([(330.0, 1.0, 4.0), (150.0, 0.25, 4.0)], 0.02), weibull_bins(9.0, 2.2)))
    # Gulf-of-Alaska-like: high mean speed, broad rose.
    write_json("ak_offshore.json",
               distribution(rose([(60.0, 1.0, 1.5), (240.0, 0.6, 1.5)], 0.05), weibull_bins(11.0, 2.2)))
    # High-wind site for the turbine-count sweep: two opposed prevailing sectors.
    write_json("high_wind.json",
               distribution(rose([(270.0, 1.0, 3.0), (90.0, 0.6, 3.0)], 0.03), weibull_bins(10.5, 2.4)))
    ndbc_fixtures()
    hourly_csv()


if __name__ == "__main__":
    main()
