#!/usr/bin/env python3
"""Independent CIEDE2000 oracle for the 34 Sharma/Wu/Dalal verification pairs.

Checks dE00 against the published column, checks |dH'| against the
Pythagorean identity dH'^2 = da'^2 + db'^2 - dC'^2, then prints the pairs
with signed dH' and dE00 as C++ initializers for tests/test_metrics.cpp.
"""

import math

# L1 a1 b1 L2 a2 b2 dE00 (published)
PAIRS = [
    (50.0000, 2.6772, -79.7751, 50.0000, 0.0000, -82.7485, 2.0425),
    (50.0000, 3.1571, -77.2803, 50.0000, 0.0000, -82.7485, 2.8615),
    (50.0000, 2.8361, -74.0200, 50.0000, 0.0000, -82.7485, 3.4412),
    (50.0000, -1.3802, -84.2814, 50.0000, 0.0000, -82.7485, 1.0000),
    (50.0000, -1.1848, -84.8006, 50.0000, 0.0000, -82.7485, 1.0000),
    (50.0000, -0.9009, -85.5211, 50.0000, 0.0000, -82.7485, 1.0000),
    (50.0000, 0.0000, 0.0000, 50.0000, -1.0000, 2.0000, 2.3669),
    (50.0000, -1.0000, 2.0000, 50.0000, 0.0000, 0.0000, 2.3669),
    (50.0000, 2.4900, -0.0010, 50.0000, -2.4900, 0.0009, 7.1792),
    (50.0000, 2.4900, -0.0010, 50.0000, -2.4900, 0.0010, 7.1792),
    (50.0000, 2.4900, -0.0010, 50.0000, -2.4900, 0.0011, 7.2195),
    (50.0000, 2.4900, -0.0010, 50.0000, -2.4900, 0.0012, 7.2195),
    (50.0000, -0.0010, 2.4900, 50.0000, 0.0009, -2.4900, 4.8045),
    (50.0000, -0.0010, 2.4900, 50.0000, 0.0010, -2.4900, 4.8045),
    (50.0000, -0.0010, 2.4900, 50.0000, 0.0011, -2.4900, 4.7461),
    (50.0000, 2.5000, 0.0000, 50.0000, 0.0000, -2.5000, 4.3065),
    (50.0000, 2.5000, 0.0000, 73.0000, 25.0000, -18.0000, 27.1492),
    (50.0000, 2.5000, 0.0000, 61.0000, -5.0000, 29.0000, 22.8977),
    (50.0000, 2.5000, 0.0000, 56.0000, -27.0000, -3.0000, 31.9030),
    (50.0000, 2.5000, 0.0000, 58.0000, 24.0000, 15.0000, 19.4535),
    (50.0000, 2.5000, 0.0000, 50.0000, 3.1736, 0.5854, 1.0000),
    (50.0000, 2.5000, 0.0000, 50.0000, 3.2972, 0.0000, 1.0000),
    (50.0000, 2.5000, 0.0000, 50.0000, 1.8634, 0.5757, 1.0000),
    (50.0000, 2.5000, 0.0000, 50.0000, 3.2592, 0.3350, 1.0000),
    (60.2574, -34.0099, 36.2677, 60.4626, -34.1751, 39.4387, 1.2644),
    (63.0109, -31.0961, -5.8663, 62.8187, -29.7946, -4.0864, 1.2630),
    (61.2901, 3.7196, -5.3901, 61.4292, 2.2480, -4.9620, 1.8731),
    (35.0831, -44.1164, 3.7933, 35.0232, -40.0716, 1.5901, 1.8645),
    (22.7233, 20.0904, -46.6940, 23.0331, 14.9730, -42.5619, 2.0373),
    (36.4612, 47.8580, 18.3852, 36.2715, 50.5065, 21.2231, 1.4146),
    (90.8027, -2.0831, 1.4410, 91.1528, -1.6435, 0.0447, 1.4441),
    (90.9257, -0.5406, -0.9208, 88.6381, -0.8985, -0.7239, 1.5381),
    (6.7747, -0.2908, -2.4247, 5.8714, -0.0985, -2.2286, 0.6377),
    (2.0776, 0.0795, -1.1350, 0.9033, -0.0636, -0.5514, 0.9082),
]


def ciede2000(l1, a1, b1, l2, a2, b2):
    rad = math.radians
    cab = (math.sqrt(a1 * a1 + b1 * b1) + math.sqrt(a2 * a2 + b2 * b2)) / 2
    g = 0.5 * (1 - math.sqrt(cab**7 / (cab**7 + 25**7)))
    ap1, ap2 = a1 * (1 + g), a2 * (1 + g)
    cp1, cp2 = math.sqrt(ap1**2 + b1**2), math.sqrt(ap2**2 + b2**2)

    def angle(b, ap):
        if b == 0 and ap == 0:
            return 0.0
        return math.degrees(math.atan2(b, ap)) % 360

    hp1, hp2 = angle(b1, ap1), angle(b2, ap2)
    dl, dc = l2 - l1, cp2 - cp1
    if cp1 * cp2 == 0:
        dhp = 0.0
    elif abs(hp2 - hp1) <= 180:
        dhp = hp2 - hp1
    elif hp2 - hp1 > 180:
        dhp = hp2 - hp1 - 360
    else:
        dhp = hp2 - hp1 + 360
    dh = 2 * math.sqrt(cp1 * cp2) * math.sin(rad(dhp) / 2)

    lbar, cbar = (l1 + l2) / 2, (cp1 + cp2) / 2
    if cp1 * cp2 == 0:
        hbar = hp1 + hp2
    elif abs(hp1 - hp2) <= 180:
        hbar = (hp1 + hp2) / 2
    elif hp1 + hp2 < 360:
        hbar = (hp1 + hp2 + 360) / 2
    else:
        hbar = (hp1 + hp2 - 360) / 2
    t = (1 - 0.17 * math.cos(rad(hbar - 30)) + 0.24 * math.cos(rad(2 * hbar))
         + 0.32 * math.cos(rad(3 * hbar + 6)) - 0.20 * math.cos(rad(4 * hbar - 63)))
    dtheta = 30 * math.exp(-(((hbar - 275) / 25) ** 2))
    rc = 2 * math.sqrt(cbar**7 / (cbar**7 + 25**7))
    sl = 1 + 0.015 * (lbar - 50) ** 2 / math.sqrt(20 + (lbar - 50) ** 2)
    sc = 1 + 0.045 * cbar
    sh = 1 + 0.015 * cbar * t
    rt = -math.sin(rad(2 * dtheta)) * rc
    de = math.sqrt((dl / sl) ** 2 + (dc / sc) ** 2 + (dh / sh) ** 2 + rt * (dc / sc) * (dh / sh))
    identity = math.sqrt(max(0.0, (ap2 - ap1) ** 2 + (b2 - b1) ** 2 - dc**2))
    return de, dh, sh, identity


def main():
    for row in PAIRS:
        de, dh, sh, identity = ciede2000(*row[:6])
        assert abs(de - row[6]) < 5e-5, (row, de)
        assert abs(abs(dh) - identity) < 1e-9, (row, dh, identity)
    for row in PAIRS:
        de, dh, sh, _ = ciede2000(*row[:6])
        lab = ", ".join(f"{v:.4f}" for v in row[:6])
        print(f"    {{{lab}, {dh:.10f}, {sh:.10f}, {row[6]:.4f}}},")


if __name__ == "__main__":
    main()
