#!/usr/bin/env python3
"""Rebuild tests/fixtures/scenes/*.hdr from the CC0 environment maps shipped in
the npm package @pmndrs/assets (Poly Haven HDRIs, 512x256 DWAB EXR).

    npm pack @pmndrs/assets@1.7.0 && tar xzf pmndrs-assets-1.7.0.tgz
    pip install OpenEXR
    python3 scripts/prepare_scenes.py package/hdri tests/fixtures/scenes

Each map is box-averaged 2x2 down to 256x128. The lossy codec rings below
zero next to bright sources, so every channel is floored at 1e-4 of the
median luminance before writing.
"""

import argparse
import base64
import pathlib
import tempfile

import numpy as np
import OpenEXR

SCENES = [
    "apartment", "bridge", "city", "dawn", "esplanade", "forest", "hall", "lab", "lobby",
    "night", "park", "sky", "studio", "sunrise", "sunset", "venice", "warehouse", "workshop",
]


def decode(js_path):
    text = js_path.read_text()
    payload = text[text.index("base64,") + 7:text.rindex("'")]
    with tempfile.NamedTemporaryFile(suffix=".exr") as tmp:
        tmp.write(base64.b64decode(payload))
        tmp.flush()
        with OpenEXR.File(tmp.name) as f:
            ch = f.channels()
            if "RGB" in ch:
                return np.asarray(ch["RGB"].pixels, dtype=np.float64)
            return np.stack([np.asarray(ch[k].pixels, dtype=np.float64) for k in "RGB"], -1)


def write_rgbe(path, img):
    # flat (uncompressed) scanlines; the library reader accepts both forms
    h, w, _ = img.shape
    m = img.max(-1)
    rgbe = np.zeros((h, w, 4), np.uint8)
    nz = m > 1e-32
    mant, exp = np.frexp(m[nz])
    scale = mant * 256.0 / m[nz]
    rgbe[nz, :3] = np.clip(img[nz] * scale[:, None], 0, 255).astype(np.uint8)
    rgbe[nz, 3] = (exp + 128).astype(np.uint8)
    with open(path, "wb") as f:
        f.write(b"#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n")
        f.write(f"-Y {h} +X {w}\n".encode())
        f.write(rgbe.tobytes())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("hdri_dir", type=pathlib.Path)
    ap.add_argument("out_dir", type=pathlib.Path)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name in SCENES:
        img = decode(args.hdri_dir / f"{name}.exr.js")
        h, w, _ = img.shape
        img = img[: h // 2 * 2, : w // 2 * 2].reshape(h // 2, 2, w // 2, 2, 3).mean(axis=(1, 3))
        floor = 1e-4 * np.median(img.mean(-1).clip(min=0))
        img = np.maximum(img, floor)
        write_rgbe(args.out_dir / f"{name}.hdr", img)
        lum = img.mean(-1)
        print(f"{name:10s} {img.shape[1]}x{img.shape[0]} "
              f"range {np.log2(np.percentile(lum, 99.5) / np.percentile(lum, 0.5)):.1f} stops")


if __name__ == "__main__":
    main()
