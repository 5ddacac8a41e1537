"""Synthetic half-court shot locations (feet, rim at the origin)."""
import numpy as np

rng = np.random.default_rng(20240804)
rows = []
# restricted area
for _ in range(300):
    rows.append(rng.multivariate_normal([0.0, 1.5], [[4.0, 0.0], [0.0, 3.0]]))
# mid-range
for _ in range(180):
    a = rng.uniform(0.15, np.pi - 0.15)
    r = rng.normal(14.0, 2.5)
    rows.append([r * np.cos(a), r * np.sin(a)])
# three-point arc and corners
for _ in range(264):
    a = rng.uniform(0.35, np.pi - 0.35)
    r = rng.normal(24.5, 1.2)
    rows.append([r * np.cos(a), r * np.sin(a)])
for _ in range(60):
    side = 1.0 if rng.uniform() < 0.5 else -1.0
    rows.append([side * rng.normal(22.5, 0.6), rng.uniform(-3.0, 8.0)])
rows = np.array(rows)
rng.shuffle(rows)
with open("shots_demo.csv", "w") as f:
    f.write("loc_x,loc_y\n")
    for x, y in rows:
        f.write(f"{x:.1f},{y:.1f}\n")
