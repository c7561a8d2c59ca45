# Also auto-modifies pytest's python path, so `tests.helpers` imports from any test folder.
from pathlib import Path
from typing import Callable

import pytest


@pytest.fixture
def scenario_file(tmp_path: Path) -> Callable[[str, str], Path]:
    """Writes scenario text into the test's temporary folder and returns its path."""

    def write(text: str, name: str = "scenario.cfg") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
