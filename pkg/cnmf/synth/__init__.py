from .generator import SynthDataset, SynthParams, dirichlet_rows, lag_grid, synth_generate

__all__ = ["SynthDataset", "SynthParams", "dirichlet_rows", "lag_grid", "synth_generate"]
