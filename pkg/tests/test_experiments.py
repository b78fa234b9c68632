from dataclasses import replace

import numpy as np
import pytest

from dimesim.core import AgentType
from dimesim.engine import InitialCondition, ModelParams, run_replicates
from dimesim.experiments import (
    PRESETS,
    SWEEP_COLUMNS,
    SweepSpec,
    cell_seed,
    dominant_type,
    initial_condition_battery,
    run_sweep,
    sweep_csv_text,
)

TINY = ModelParams(n=24, t=12, seed=3)


class TestPresets:
    def test_responsive(self):
        params = PRESETS["responsive"]
        assert (params.p, params.f, params.phi, params.r) == (0.2, 0.2, 0.2, 10)

    def test_intransigent(self):
        params = PRESETS["intransigent"]
        assert (params.p, params.f, params.phi, params.r) == (0.8, 0.8, 0.8, 10)


class TestSweepSpec:
    def test_grid_row_major_in_canonical_axis_order(self):
        spec = SweepSpec(axes={"f": [0.1, 0.2], "p": [0.3, 0.4]}, fixed=TINY)
        assert spec.grid() == [
            {"p": 0.3, "f": 0.1},
            {"p": 0.3, "f": 0.2},
            {"p": 0.4, "f": 0.1},
            {"p": 0.4, "f": 0.2},
        ]

    def test_rejects_unknown_axis(self):
        with pytest.raises(ValueError, match="axis"):
            SweepSpec(axes={"q": [0.1]}, fixed=TINY)

    def test_rejects_empty_axis(self):
        with pytest.raises(ValueError):
            SweepSpec(axes={"p": []}, fixed=TINY)

    def test_rejects_out_of_range_values_eagerly(self):
        with pytest.raises(ValueError):
            SweepSpec(axes={"p": [0.5, 1.5]}, fixed=TINY)

    def test_rejects_zero_replicates(self):
        with pytest.raises(ValueError):
            SweepSpec(axes={"p": [0.5]}, fixed=TINY, replicates=0)


class TestDominantType:
    def test_picks_largest(self):
        winner, fraction = dominant_type(np.array([0.1, 0.0, 0.0, 0.6, 0.0, 0.3]))
        assert winner is AgentType.LATENT_CONVENTIONAL
        assert fraction == 0.6

    def test_tie_breaks_to_first_in_enum_order(self):
        winner, _ = dominant_type(np.array([0.3, 0.3, 0.1, 0.1, 0.1, 0.1]))
        assert winner is AgentType.ACTIVE_CONVENTIONAL


class TestCellSeed:
    def test_depends_only_on_coordinates(self):
        assert cell_seed(5, {"p": 0.3, "f": 0.1}) == cell_seed(5, {"f": 0.1, "p": 0.3})

    def test_varies_with_coordinates_and_base(self):
        seeds = {
            cell_seed(5, {"p": 0.3}),
            cell_seed(5, {"p": 0.4}),
            cell_seed(6, {"p": 0.3}),
            cell_seed(5, {"p": 0.3, "f": 0.3}),
        }
        assert len(seeds) == 4

    def test_fits_in_signed_64_bits(self):
        for p in (0.0, 0.31, 1.0):
            assert 0 <= cell_seed(123, {"p": p, "r": 10}) < 2 ** 63


class TestRunSweep:
    def test_single_cell_equals_run_replicates(self):
        spec = SweepSpec(axes={"p": [0.5]}, fixed=TINY, replicates=2)
        [cell] = run_sweep(spec)
        direct = run_replicates(
            replace(TINY, p=0.5, seed=cell_seed(TINY.seed, {"p": 0.5})), 2
        )
        assert np.array_equal(
            cell.steady_state.type_fractions, direct.steady_state.type_fractions
        )

    def test_cells_cover_grid_in_order(self):
        spec = SweepSpec(axes={"p": [0.2, 0.8], "f": [0.1]}, fixed=TINY, replicates=1)
        cells = run_sweep(spec)
        assert [c.coordinates for c in cells] == spec.grid()

    def test_on_cell_callback_sees_every_cell(self):
        spec = SweepSpec(axes={"p": [0.2, 0.8]}, fixed=TINY, replicates=1)
        seen = []
        run_sweep(spec, on_cell=lambda cell: seen.append(cell.coordinates))
        assert seen == spec.grid()

    def test_skip_set_resumes(self):
        spec = SweepSpec(axes={"p": [0.2, 0.8]}, fixed=TINY, replicates=1)
        skip = {tuple(sorted({"p": 0.2}.items()))}
        cells = run_sweep(spec, skip=skip)
        assert [c.coordinates for c in cells] == [{"p": 0.8}]

    def test_sweep_independent_of_execution_order(self):
        spec = SweepSpec(axes={"p": [0.2, 0.8]}, fixed=TINY, replicates=1)
        both = {tuple(c.coordinates.items()): c.steady_state.type_fractions
                for c in run_sweep(spec)}
        only_second = run_sweep(spec, skip={tuple(sorted({"p": 0.2}.items()))})
        assert np.array_equal(
            both[(("p", 0.8),)], only_second[0].steady_state.type_fractions
        )


class TestBattery:
    def test_runs_all_five_variants(self):
        results = initial_condition_battery(TINY, replicates=1)
        assert set(results) == set(InitialCondition)
        for result in results.values():
            assert np.isclose(result.steady_state.type_fractions.sum(), 1.0)


class TestSweepCsv:
    def test_long_format_shape(self):
        spec = SweepSpec(axes={"p": [0.2, 0.8], "f": [0.1, 0.9]}, fixed=TINY,
                         replicates=1)
        cells = run_sweep(spec)
        lines = sweep_csv_text(cells).strip().split("\n")
        assert lines[0] == ",".join(SWEEP_COLUMNS)
        assert len(lines) == 1 + 4 * 6  # header + one row per cell per type

    def test_rows_carry_cell_coordinates(self):
        spec = SweepSpec(axes={"p": [0.25]}, fixed=TINY, replicates=1)
        cells = run_sweep(spec)
        rows = sweep_csv_text(cells).strip().split("\n")[1:]
        for row in rows:
            fields = row.split(",")
            assert float(fields[0]) == 0.25
            assert fields[4] in {t.name.lower() for t in AgentType}
