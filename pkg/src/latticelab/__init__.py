"""latticelab: a desk-scale lattice cryptography laboratory.

Discrete Gaussian sampling, the Regev LWE bit cipher, the LPR PLWE
cryptosystem, the PLWE evaluation attacks and parameter-weakness
scanner, GLYPH rejection-sampling signatures, and a leveled BGV
homomorphic scheme, all on a shared exact number-theory toolkit.
"""

__version__ = "0.1.0"
