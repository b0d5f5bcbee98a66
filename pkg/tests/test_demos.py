import subprocess
import sys
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("path", DEMOS, ids=lambda p: p.stem)
def test_demo_runs(path):
    p = subprocess.run([sys.executable, str(path)], capture_output=True, text=True)
    assert p.returncode == 0, p.stderr
    assert p.stdout.strip()
