"""Figures written next to the delimited reports (``--plot DIR``)."""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "xtick.labelsize": 7,
    "ytick.labelsize": 7,
    "figure.dpi": 120,
}


def _save(fig, directory, name):
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, name)
    # fixed metadata keeps repeated runs byte-identical
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_table(table, directory, name=None):
    """Heat map of the real parts of a supercharacter table."""
    level = table.level
    rows = [[v.to_complex().real for v in xi.values.values] for xi in table]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(1.5 + 0.35 * len(rows[0]), 1.2 + 0.3 * len(rows)))
        im = ax.imshow(rows, cmap="RdBu_r", aspect="auto")
        ax.set_xlabel("superclass")
        ax.set_ylabel("supercharacter")
        ax.set_title(f"Re xi at level {level.n}")
        fig.colorbar(im, ax=ax)
        fig.tight_layout()
        return _save(fig, directory, name or f"table_level{level.n}.png")


def plot_superdual(classes, levels, directory, name="superdual_degrees.png"):
    """Degree of each superdual class against the level, one line per class."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3.2))
        for cls in classes:
            xs = [n for n in levels if n in cls.degrees]
            ys = [cls.degrees[n].rational() for n in xs]
            ax.plot(xs, [float(y) for y in ys], marker="o", lw=0.8, alpha=0.7)
        ax.set_xticks(levels)
        ax.set_yscale("log", base=2)
        ax.set_xlabel("level n")
        ax.set_ylabel("degree")
        ax.set_title("supercharacter degrees along the lattice")
        fig.tight_layout()
        return _save(fig, directory, name)


def plot_class_sizes(fsizes, csizes, directory, name="norm_class_sizes.png"):
    """Twisted class sizes at level n against the conjugacy class sizes they map to."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4, 3.2))
        ax.scatter(csizes, fsizes, s=14)
        ax.set_xlabel("conjugacy class size (target level)")
        ax.set_ylabel("twisted class size")
        ax.set_xscale("log", base=2)
        ax.set_yscale("log", base=2)
        fig.tight_layout()
        return _save(fig, directory, name)
