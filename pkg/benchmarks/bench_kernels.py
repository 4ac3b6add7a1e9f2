"""Compiled vs pure-Python kernels on paper-scale shapes.

Each operation runs once per backend with the dispatched functions in
``sbnn._kernels`` swapped, so the numbers include the Python glue around the
kernel exactly as the library uses it.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--quick]
"""

import argparse
import contextlib
import timeit

import numpy as np

from sbnn import _kernels, codecs, infer, train
from sbnn.codecs import Codec
from sbnn.core import pack_bits

KERNELS = [
    "popcount_and", "write_fields", "ie_decode", "rle_decode", "huffman_decode",
    "binarize_weights", "latent_grad", "adamax_clip",
]


@contextlib.contextmanager
def using(name):
    impl = _kernels.backends()[name]
    saved = {k: getattr(_kernels, k) for k in KERNELS}
    for k in KERNELS:
        setattr(_kernels, k, getattr(impl, k))
    try:
        yield
    finally:
        for k, v in saved.items():
            setattr(_kernels, k, v)


def cases(quick):
    rng = np.random.default_rng(0)
    n = 256 if quick else 1024
    bits = pack_bits((rng.random((n, n)) < 0.01).astype(np.uint8), (n, n))
    encoded = {c: codecs.encode(bits, c) for c in (Codec.IE, Codec.RLE, Codec.HE)}

    from sbnn.core import AffineBinaryDomain, Comparator, SbnnLayer, SbnnModel

    hidden = SbnnLayer(bits, AffineBinaryDomain(-0.5, 2.0), np.zeros(n), np.full(n, Comparator.GE, np.int8))
    out_bits = pack_bits((rng.random((10, n)) < 0.01).astype(np.uint8), (10, n))
    head = SbnnLayer(out_bits, AffineBinaryDomain(-0.5, 2.0), is_output=True,
                     out_scale=np.ones(10), out_shift=np.zeros(10))
    model = SbnnModel((hidden, hidden, head), n)
    x = rng.uniform(-1, 1, (1000, n))

    layers = train.build_mlp((784, n, n, 10), seed=0)
    xb = rng.uniform(-1, 1, (32, 784)).astype(np.float32)
    yb = rng.integers(0, 10, 32)
    cfg = train.TrainConfig(target_ec=0.01, gamma=0.45)
    opt = train.AdamaxState()

    lat = rng.uniform(-1, 1, (n, n)).astype(np.float32)
    buf = np.empty_like(lat)
    return {
        f"IE decode {n}x{n} EC 1%": lambda: codecs.decode(encoded[Codec.IE]),
        f"RLE decode {n}x{n} EC 1%": lambda: codecs.decode(encoded[Codec.RLE]),
        f"HE decode {n}x{n} EC 1%": lambda: codecs.decode(encoded[Codec.HE]),
        f"IE encode {n}x{n} EC 1%": lambda: codecs.encode(bits, Codec.IE),
        f"fused forward 1000x{n}": lambda: infer.forward_fused(model, x),
        f"binarize {n}x{n}": lambda: _kernels.binarize_weights(lat, 1.0, -1.0, buf),
        f"train step 784-{n}-{n}-10 batch 32": lambda: train.train_step(layers, xb, yb, cfg, opt, 0.001),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--quick", action="store_true", help="smaller matrices")
    args = ap.parse_args()
    names = sorted(_kernels.backends())
    work = cases(args.quick)
    print(f"{'operation':38s}" + "".join(f"{n + ' ms':>12s}" for n in names) + f"{'speedup':>10s}")
    for label, fn in work.items():
        times = {}
        for name in names:
            with using(name):
                fn()
                times[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat)) * 1e3
        row = f"{label:38s}" + "".join(f"{times[n]:12.2f}" for n in names)
        if len(names) == 2:
            row += f"{times['python'] / times['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
