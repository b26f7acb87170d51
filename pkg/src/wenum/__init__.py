"""Weight-enumerator workbench for binary linear block codes.

Combines genetic-algorithm weight search, exact codeword counting, exact
MacWilliams/Pless/Gleason algebra over big integers, and automorphism-group
congruence analysis with CRT recombination.
"""

__version__ = "0.1.0"
