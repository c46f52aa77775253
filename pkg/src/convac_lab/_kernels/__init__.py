"""Hot numeric kernels: compiled extension (`_fastcore`) plus numpy fallback."""
