"""Drive the command-line verifier end to end: write a .nnet model and a
property file to a temp directory, run the `vpreach` entry point, and read
back the JSON report.

Run:  python3 demos/03_cli_verification.py
"""

import json
import tempfile
from pathlib import Path

import numpy as np

from vpreach import LayerParams, Network, serialize_nnet
from vpreach.cli import RunConfig, run

rng = np.random.default_rng(12)
widths = [2, 4, 4, 2]
net = Network.from_layers(
    [LayerParams(rng.uniform(-1, 1, (m, n)), rng.uniform(-0.5, 0.5, m))
     for n, m in zip(widths, widths[1:])])

SAFE = """\
# outputs stay below a generous bound on the input box
[input]
0: -1.0 1.0
1: -1.0 1.0
[output]
1 0 <= 100.0
"""

UNSAFE = """\
[input]
0: -1.0 1.0
1: -1.0 1.0
[output]
1 0 <= -100.0
"""

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    (tmp / "net.nnet").write_text(serialize_nnet(net))
    for name, text in [("safe", SAFE), ("unsafe", UNSAFE)]:
        (tmp / f"{name}.prop").write_text(text)
        report_path = tmp / f"{name}.json"
        code, _ = run(RunConfig(
            network_path=str(tmp / "net.nnet"),
            property_path=str(tmp / f"{name}.prop"),
            algorithm="epnm",
            report_path=str(report_path),
        ))
        report = json.loads(report_path.read_text())
        print(f"\n{name}: exit code {code}, report:")
        print(json.dumps(report, indent=2))
