"""Run the acceptance suite and print one line per criterion."""
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def main():
    cmd = [sys.executable, "-m", "pytest", "-q", "-s", str(ROOT / "tests" / "test_acceptance.py")]
    return subprocess.call(cmd + sys.argv[1:], cwd=ROOT)


if __name__ == "__main__":
    sys.exit(main())
