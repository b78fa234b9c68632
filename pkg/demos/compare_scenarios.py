"""Compare a responsive and an intransigent authority side by side.

Runs both preset scenarios at a reduced scale (500 agents, 3000 steps,
3 replicates each) and prints the steady-state population composition.
Under the responsive authority (low failure probability, low re-framing
thresholds) most agents end up latent and conventional; under the
intransigent authority the population radicalises.

Run with:  python3 demos/compare_scenarios.py
"""

from dataclasses import replace

from dimesim.core import AgentType
from dimesim.engine import run_replicates
from dimesim.experiments import PRESETS

N_AGENTS = 500
N_STEPS = 3_000
REPLICATES = 3
SEED = 42


def describe(name, result):
    fractions = result.steady_state.type_fractions
    print(f"\n{name} (p={result.params.p}, F={result.params.f}, "
          f"phi={result.params.phi}, R={result.params.r})")
    for agent_type in AgentType:
        bar = "#" * round(40 * fractions[agent_type])
        print(f"  {agent_type.abbreviation}  {fractions[agent_type]:6.3f}  {bar}")
    means = result.steady_state.mean_dime
    print(f"  mean state  D={means[0]:5.1f}  I={means[1]:5.1f}  "
          f"M={means[2]:5.1f}  E={means[3]:5.1f}")


def main():
    for name, preset in PRESETS.items():
        params = replace(preset, n=N_AGENTS, t=N_STEPS, seed=SEED)
        result = run_replicates(params, REPLICATES)
        describe(name, result)


if __name__ == "__main__":
    main()
