"""Numeric thresholds of the 7/8 argument, kept in one place."""

# Constant in 7n/8 - BIGO_CONSTANT * (rho3 - 2).
BIGO_CONSTANT = 18

# Faces and vertices this close to a face of F send it their charge.
COLLECTION_RADIUS = 9

# Faces of F are expected at least this far apart.
FAR_APART_DISTANCE = 21

# Lower bound on |X| for a small separator.
SEPARATOR_THRESHOLD = 21

# 8 * sum_{k<=9} n(f, k) >= DEGENEQ_THRESHOLD
DEGENEQ_THRESHOLD = 249
DEGENEQ_LAYERS = 10

# n(f, 1) >= BASIC_LAYERS_THRESHOLD
BASIC_LAYERS_THRESHOLD = 2

# |C_0 u ... u C_9| >= LAYER_UNION_THRESHOLD
LAYER_UNION_THRESHOLD = 184
