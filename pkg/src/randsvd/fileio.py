"""
Matrix file formats: headerless CSV, Matrix Market (coordinate and array,
real general) and PGM grayscale images (P2/P5).

Writers go through a temporary file in the target directory followed by
``os.replace``, so a failed run never leaves a partial file behind.
"""
import io as _io
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from .core import as_matrix
from .errors import DimensionError, FormatError


@contextmanager
def atomic_write(path, mode="w"):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode) as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def fmt(x):
    """17 significant digits: enough for an exact float64 round-trip."""
    return format(float(x), ".17g")


# --------------------------------------------------------------------- CSV

def parse_csv(text, comment="#"):
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(comment):
            continue
        row = []
        for colno, field in enumerate(stripped.split(","), start=1):
            try:
                row.append(float(field))
            except ValueError:
                raise FormatError(f"not a number: {field.strip()!r}", lineno, colno) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FormatError(f"expected {width} fields, found {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise FormatError("no data rows")
    return as_matrix(np.array(rows))


def csv_text(M, header=()):
    buf = _io.StringIO()
    for line in header:
        buf.write(f"# {line}\n")
    for row in np.atleast_2d(M):
        buf.write(",".join(fmt(x) for x in row) + "\n")
    return buf.getvalue()


def write_csv(M, path, header=()):
    M = np.asarray(M, dtype=np.float64)
    if M.ndim == 1:
        M = M[:, None]
    with atomic_write(path) as fh:
        fh.write(csv_text(M, header))


def read_csv(path):
    return parse_csv(Path(path).read_text())


# ------------------------------------------------------------ Matrix Market

def parse_matrix_market(text):
    lines = text.splitlines()
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise FormatError("missing %%MatrixMarket banner", 1)
    banner = lines[0].split()
    if len(banner) != 5:
        raise FormatError("banner must have 5 fields", 1)
    _, obj, layout, field, symmetry = (b.lower() for b in banner)
    if obj != "matrix" or layout not in ("coordinate", "array"):
        raise FormatError(f"unsupported object/format {obj} {layout}", 1)
    if field not in ("real", "integer", "double") or symmetry != "general":
        raise FormatError(f"only real general matrices are supported, got {field} {symmetry}", 1)

    body = [(n, l.strip()) for n, l in enumerate(lines[1:], start=2)
            if l.strip() and not l.lstrip().startswith("%")]
    if not body:
        raise FormatError("missing size line")

    def numbers(lineno, line, count, kinds):
        parts = line.split()
        if len(parts) != count:
            raise FormatError(f"expected {count} fields, found {len(parts)}", lineno)
        out = []
        for col, (part, kind) in enumerate(zip(parts, kinds), start=1):
            try:
                out.append(kind(part))
            except ValueError:
                raise FormatError(f"bad value {part!r}", lineno, col) from None
        return out

    size_no, size_line = body[0]
    if layout == "coordinate":
        m, n, nnz = numbers(size_no, size_line, 3, (int, int, int))
        if len(body) - 1 != nnz:
            raise FormatError(f"expected {nnz} entries, found {len(body) - 1}", size_no)
        M = np.zeros((m, n))
        for lineno, line in body[1:]:
            i, j, v = numbers(lineno, line, 3, (int, int, float))
            if not (1 <= i <= m and 1 <= j <= n):
                raise FormatError(f"index ({i}, {j}) outside {m}x{n}", lineno)
            M[i - 1, j - 1] += v
    else:
        m, n = numbers(size_no, size_line, 2, (int, int))
        if len(body) - 1 != m * n:
            raise FormatError(f"expected {m * n} values, found {len(body) - 1}", size_no)
        vals = [numbers(lineno, line, 1, (float,))[0] for lineno, line in body[1:]]
        # array layout is column-major
        M = np.array(vals, dtype=np.float64).reshape((m, n), order="F")
    return as_matrix(M)


def matrix_market_text(M=None, triplets=None, comments=()):
    buf = _io.StringIO()
    if triplets is not None:
        buf.write("%%MatrixMarket matrix coordinate real general\n")
        for c in comments:
            buf.write(f"% {c}\n")
        buf.write(f"{triplets.rows} {triplets.cols} {triplets.nnz}\n")
        for i, j, v in zip(triplets.i, triplets.j, triplets.v):
            buf.write(f"{i + 1} {j + 1} {fmt(v)}\n")
    else:
        M = np.asarray(M, dtype=np.float64)
        buf.write("%%MatrixMarket matrix array real general\n")
        for c in comments:
            buf.write(f"% {c}\n")
        buf.write(f"{M.shape[0]} {M.shape[1]}\n")
        for v in M.ravel(order="F"):
            buf.write(fmt(v) + "\n")
    return buf.getvalue()


def write_matrix_market(path, M=None, triplets=None, comments=()):
    with atomic_write(path) as fh:
        fh.write(matrix_market_text(M, triplets, comments))


# --------------------------------------------------------------------- PGM

def _pgm_tokens(data):
    """Yield (token, offset_after_token) from a PGM header, skipping comments."""
    pos = 0
    while True:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        if pos >= len(data):
            return
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        yield data[start:pos], pos


def parse_pgm(data):
    """Decode P2 or P5 bytes into a float matrix with values in [0, maxval]."""
    tokens = _pgm_tokens(data)
    header = []
    end = 0
    for tok, end in tokens:
        header.append(tok)
        if len(header) == 4:
            break
    if len(header) < 4:
        raise FormatError("truncated PGM header")
    magic = header[0]
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"not a PGM file (magic {magic!r})")
    try:
        width, height, maxval = (int(t) for t in header[1:4])
    except ValueError:
        raise FormatError("non-integer PGM header field") from None
    if width < 1 or height < 1 or not 1 <= maxval <= 65535:
        raise FormatError(f"invalid PGM header {width}x{height} maxval {maxval}")
    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        raster = data[end + 1:]
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        if len(raster) < count * dtype.itemsize:
            raise FormatError("truncated P5 raster")
        pix = np.frombuffer(raster, dtype=dtype, count=count).astype(np.float64)
    else:
        try:
            pix = np.array([int(t) for t, _ in tokens], dtype=np.float64)
        except ValueError:
            raise FormatError("non-integer P2 pixel") from None
        if pix.shape[0] < count:
            raise FormatError("truncated P2 raster")
        pix = pix[:count]
    if np.any(pix > maxval):
        raise FormatError("pixel value exceeds maxval")
    return pix.reshape(height, width)


def quantize(M):
    """Clamp to [0, 255] and round half up."""
    return np.floor(np.clip(np.asarray(M, dtype=np.float64), 0.0, 255.0) + 0.5)


def pgm_bytes(M):
    Q = quantize(M).astype(np.uint8)
    h, w = Q.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + Q.tobytes()


def read_pgm(path):
    return parse_pgm(Path(path).read_bytes())


def write_pgm(M, path):
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2:
        raise DimensionError(f"image must be 2-D, got shape {M.shape}")
    with atomic_write(path, "wb") as fh:
        fh.write(pgm_bytes(M))


# ---------------------------------------------------------------- dispatch

FORMATS = ("csv", "mm", "pgm")


def guess_format(path):
    suffix = Path(path).suffix.lower()
    return {".csv": "csv", ".txt": "csv", ".mtx": "mm", ".mm": "mm", ".pgm": "pgm"}.get(suffix, "csv")


def read_matrix(path, format=None):
    format = format or guess_format(path)
    if format == "csv":
        return read_csv(path)
    if format in ("mm", "matrix-market"):
        return parse_matrix_market(Path(path).read_text())
    if format == "pgm":
        return read_pgm(path)
    raise FormatError(f"unknown format {format!r}")


def write_matrix(M, path, format=None, header=()):
    format = format or guess_format(path)
    if format == "csv":
        write_csv(M, path, header)
    elif format in ("mm", "matrix-market"):
        write_matrix_market(path, M=M, comments=header)
    elif format == "pgm":
        write_pgm(M, path)
    else:
        raise FormatError(f"unknown format {format!r}")
