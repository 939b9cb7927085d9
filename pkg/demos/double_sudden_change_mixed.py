"""One or two sudden changes under bit flip on A and phase flip on B.

With different flip types each axis decays at its own rate: the axis only
the slower side touches, the axis only the faster side touches, and the
axis both touch.  When the fastest-decaying axis starts on top, the
coupling ratio x decides whether the argmax hops once or twice.
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from belldyn import (
    BellDiagonalState,
    ChannelPair,
    ChannelSpec,
    FlipType,
    MarkovianSchedule,
    SweepSpec,
    classify_regime,
    find_change_points,
    simulate,
)

outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")
outdir.mkdir(parents=True, exist_ok=True)

s0 = BellDiagonalState(0.1, 0.5, 0.3)
sweep = SweepSpec(variable="p", start=0.0, stop=1.0, steps=1001)


def pair(x):
    return ChannelPair(
        channel_a=ChannelSpec(FlipType.BIT, MarkovianSchedule(gamma=1.0)),
        channel_b=ChannelSpec(FlipType.PHASE, MarkovianSchedule(gamma=1.0)),
        x=x,
    )


# threshold (|c2| - |c3|) / (|c2| - |c1|) = 0.5 for this state
fig, axes = plt.subplots(1, 2, figsize=(9, 3.5), sharey=True)
for ax, x in zip(axes, (0.4, 0.6)):
    traj = simulate(s0, pair(x), sweep)
    label = classify_regime(s0, pair(x)).value
    points = find_change_points(traj)
    print(f"x={x}: {label}, {len(points)} change point(s) at "
          + ", ".join(f"{cp.sweep_value:.6f}" for cp in points))
    p = [s.sweep_value for s in traj.samples]
    ax.plot(p, [s.corr.classical for s in traj.samples], label="C")
    ax.plot(p, [s.corr.quantum for s in traj.samples], label="Q")
    for cp in points:
        ax.axvline(cp.sweep_value, color="gray", ls=":", lw=1)
    ax.set_title(f"x = {x}: {label}")
    ax.set_xlabel("p")
axes[0].set_ylabel("correlation (bits)")
axes[0].legend()
fig.tight_layout()
target = outdir / "double_sudden_change_mixed.png"
fig.savefig(target, dpi=150)
print(f"wrote {target}")
