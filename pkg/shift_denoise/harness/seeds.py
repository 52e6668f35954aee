"""Per-trial seed derivation: a splitmix64 step over the master seed."""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(z: int) -> int:
    """The splitmix64 output finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, index: int) -> int:
    """Seed of stream ``index``: splitmix64(master_seed + (index + 1)·γ)."""
    return splitmix64(int(master_seed) + (int(index) + 1) * GOLDEN_GAMMA)
