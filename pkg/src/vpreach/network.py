"""Feed-forward ReLU network model and the ``.nnet`` exchange format.

ReLU applies after every layer except the last, which stays affine.  The
``.nnet`` header carries input clamping bounds plus mean/range pairs for
input normalization and output denormalization; the pointwise ``forward``
evaluator doubles as the ground-truth oracle for the reachability pipelines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import NnetParseError
from .vpolytope import LayerParams


@dataclass(frozen=True)
class Network:
    """Immutable stack of affine layers with normalization metadata."""

    layers: tuple[LayerParams, ...]
    input_mins: np.ndarray
    input_maxes: np.ndarray
    input_means: np.ndarray
    input_ranges: np.ndarray
    output_mean: float
    output_range: float

    def __post_init__(self):
        for name in ("input_mins", "input_maxes", "input_means", "input_ranges"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        widths = [self.layers[0].in_dim] + [l.out_dim for l in self.layers]
        for prev, layer in zip(self.layers, self.layers[1:]):
            if layer.in_dim != prev.out_dim:
                raise NnetParseError(
                    f"layer widths are inconsistent: {widths}")
        if self.input_mins.shape != (self.input_dim,):
            raise NnetParseError(
                f"normalization vectors must have length {self.input_dim}")

    @property
    def input_dim(self) -> int:
        return self.layers[0].in_dim

    @property
    def output_dim(self) -> int:
        return self.layers[-1].out_dim

    @property
    def num_layers(self) -> int:
        return len(self.layers)

    @classmethod
    def from_layers(cls, layers: Sequence[LayerParams]) -> "Network":
        """Network with identity normalization, for programmatic use."""
        layers = tuple(layers)
        n = layers[0].in_dim
        big = np.full(n, 1e30)
        return cls(layers, -big, big, np.zeros(n), np.ones(n), 0.0, 1.0)


def normalize_input(net: Network, x_raw: np.ndarray) -> np.ndarray:
    """Clamp to the header's [min, max] box, then center and rescale."""
    x = np.clip(np.asarray(x_raw, dtype=float), net.input_mins, net.input_maxes)
    return (x - net.input_means) / net.input_ranges


def denormalize_output(net: Network, y: np.ndarray) -> np.ndarray:
    return np.asarray(y, dtype=float) * net.output_range + net.output_mean


def forward(net: Network, x: np.ndarray, normalized: bool = True) -> np.ndarray:
    """Evaluate the network on a single input point.

    With ``normalized`` unset, the input is normalized first and the output
    denormalized after, matching how raw-unit property boxes are wired up.
    """
    x = np.asarray(x, dtype=float)
    if not normalized:
        x = normalize_input(net, x)
    for layer in net.layers[:-1]:
        x = np.maximum(layer.weights @ x + layer.biases, 0.0)
    x = net.layers[-1].weights @ x + net.layers[-1].biases
    if not normalized:
        x = denormalize_output(net, x)
    return x


def _numbers(line: str) -> list[float]:
    tokens = [t for t in line.replace(",", " ").split() if t]
    return [float(t) for t in tokens]


class _LineReader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next_data_line(self, what: str) -> tuple[list[float], int]:
        while self.pos < len(self.lines):
            self.pos += 1
            raw = self.lines[self.pos - 1].strip()
            if not raw or raw.startswith("//"):
                continue
            try:
                return _numbers(raw), self.pos
            except ValueError as exc:
                raise NnetParseError(f"non-numeric token while reading {what}: {exc}",
                                     line=self.pos) from None
        raise NnetParseError(f"file ended while reading {what}", line=self.pos)


def parse_nnet(source: str | bytes) -> Network:
    """Parse a ``.nnet`` v1 document into a :class:`Network`.

    Raises :class:`NnetParseError` with the offending line number on a
    malformed header, inconsistent layer sizes, or a short file.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    reader = _LineReader(source)

    header, line_no = reader.next_data_line("header")
    if len(header) < 4:
        raise NnetParseError("header needs numLayers, inputSize, outputSize, "
                             "maxLayerSize", line=line_no)
    num_layers, input_size, output_size = (int(v) for v in header[:3])
    if num_layers < 1 or input_size < 1 or output_size < 1:
        raise NnetParseError("header sizes must be positive", line=line_no)

    sizes, line_no = reader.next_data_line("layer sizes")
    sizes = [int(v) for v in sizes]
    if len(sizes) != num_layers + 1:
        raise NnetParseError(
            f"expected {num_layers + 1} layer sizes, got {len(sizes)}", line=line_no)
    if sizes[0] != input_size or sizes[-1] != output_size:
        raise NnetParseError("layer sizes disagree with header input/output sizes",
                             line=line_no)

    reader.next_data_line("unused flag")

    mins, line_no = reader.next_data_line("input minimums")
    maxes, _ = reader.next_data_line("input maximums")
    means, _ = reader.next_data_line("means")
    ranges, line_no_r = reader.next_data_line("ranges")
    for name, vec, want in (("input minimums", mins, input_size),
                            ("input maximums", maxes, input_size),
                            ("means", means, input_size + 1),
                            ("ranges", ranges, input_size + 1)):
        if len(vec) != want:
            raise NnetParseError(
                f"{name} must hold {want} values, got {len(vec)}", line=line_no)
    if any(r == 0.0 for r in ranges):
        raise NnetParseError("normalization ranges must be nonzero", line=line_no_r)

    layers = []
    for l in range(num_layers):
        rows = []
        for r in range(sizes[l + 1]):
            row, line_no = reader.next_data_line(
                f"weight row {r} of layer {l + 1}")
            if len(row) != sizes[l]:
                raise NnetParseError(
                    f"weight row of layer {l + 1} must hold {sizes[l]} values, "
                    f"got {len(row)}", line=line_no)
            rows.append(row)
        biases = []
        for r in range(sizes[l + 1]):
            vals, line_no = reader.next_data_line(
                f"bias {r} of layer {l + 1}")
            biases.extend(vals)
        if len(biases) != sizes[l + 1]:
            raise NnetParseError(
                f"layer {l + 1} needs {sizes[l + 1]} biases, got {len(biases)}",
                line=line_no)
        layers.append(LayerParams(np.array(rows), np.array(biases)))

    return Network(
        layers=tuple(layers),
        input_mins=np.array(mins),
        input_maxes=np.array(maxes),
        input_means=np.array(means[:input_size]),
        input_ranges=np.array(ranges[:input_size]),
        output_mean=float(means[input_size]),
        output_range=float(ranges[input_size]),
    )


def serialize_nnet(net: Network) -> str:
    """Inverse of :func:`parse_nnet` for round-trip fixtures."""
    def line(values):
        return ",".join(repr(float(v)) for v in values) + ","

    sizes = [net.input_dim] + [l.out_dim for l in net.layers]
    out = [
        f"{net.num_layers},{net.input_dim},{net.output_dim},{max(sizes)},",
        ",".join(str(s) for s in sizes) + ",",
        "0,",
        line(net.input_mins),
        line(net.input_maxes),
        line([*net.input_means, net.output_mean]),
        line([*net.input_ranges, net.output_range]),
    ]
    for layer in net.layers:
        for row in layer.weights:
            out.append(line(row))
        for b in layer.biases:
            out.append(line([b]))
    return "\n".join(out) + "\n"
