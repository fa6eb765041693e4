"""Regenerate the bundled 804x1092 grayscale test image."""
from pathlib import Path

import numpy as np

from randsvd.experiments import synthetic_image
from randsvd.fileio import write_pgm

OUT = Path(__file__).resolve().parents[1] / "src" / "randsvd" / "data" / "test_image.pgm"

if __name__ == "__main__":
    img = synthetic_image()
    write_pgm(img, OUT)
    print(f"wrote {OUT} ({img.shape[0]}x{img.shape[1]}, rank {np.linalg.matrix_rank(img)})")
