"""Render a fig2/fig3 table as heatmaps with the white/grey/black zones."""
import sys

import matplotlib.pyplot as plt
import pandas as pd

table = pd.read_csv(sys.argv[1])
slice_col, x_col, y_col = table.columns[:3]
slices = table[slice_col].unique()
fig, axes = plt.subplots(1, len(slices), figsize=(5 * len(slices), 4))
for ax, value in zip(list(axes) if len(slices) > 1 else [axes], slices):
    grid = table[table[slice_col] == value].pivot(index=y_col, columns=x_col,
                                                  values="diagonal")
    ax.pcolormesh(grid.columns, grid.index, grid.values,
                  cmap="gray", vmin=0.0, vmax=1.0, shading="auto")
    ax.contour(grid.columns, grid.index, grid.values, levels=[0.25, 0.5],
               colors=["tab:red", "tab:blue"])
    ax.set_title(f"{slice_col} = {value:g}")
    ax.set_xlabel(x_col)
    ax.set_ylabel(y_col)
fig.tight_layout()
fig.savefig(sys.argv[2] if len(sys.argv) > 2 else "heatmap.png", dpi=150)
