import sys

import numpy as np
import pytest

from alloy_explorer import kernels
from alloy_explorer.data import ColumnGroup, ColumnSpec, Dataset


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance checklist, one PASS/FAIL line per guarantee."""
    module = sys.modules.get("test_acceptance")
    if module is None or not getattr(module, "RESULTS", None):
        return
    terminalreporter.section("acceptance checklist")
    for line in module.checklist():
        terminalreporter.write_line(line)


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    impl = kernels.available_backends()[request.param]
    monkeypatch.setattr(kernels, "classify_rows", impl.classify_rows)
    monkeypatch.setattr(kernels, "select_nearest", impl.select_nearest)
    return request.param


def make_dataset(values, names=None, groups=None, row_ids=None) -> Dataset:
    """Dataset from a plain 2-D array; defaults every column to PROPERTY."""
    values = np.asarray(values, dtype=np.float64)
    n_cols = values.shape[1]
    if names is None:
        names = [f"c{i}" for i in range(n_cols)]
    if groups is None:
        groups = [ColumnGroup.PROPERTY] * n_cols
    columns = tuple(ColumnSpec(name, group) for name, group in zip(names, groups))
    if row_ids is None:
        row_ids = np.arange(values.shape[0], dtype=np.int64)
    return Dataset(columns=columns, values=values.copy(), source_row_ids=np.asarray(row_ids, dtype=np.int64))


@pytest.fixture(scope="session")
def synth_1k():
    from alloy_explorer.synthetic import synthesize_dataset

    return synthesize_dataset(1000, seed=11)
