"""Digital dyadic nets and sequences over GF(2)."""

from .errors import (DimensionError, DyadicError, InfeasibleSize, InvalidSeed, NotDigitalError,
                     NotDyadicError, NotProgressiveError, SingularError, UnsupportedDimension)
from .gf2 import BitMatrix, BitVector, LUDecomposition, anti_diagonal, identity, pascal
from .pairs import (GeneratorPair, Point, PointSet, characteristic, generate, is_dyadic_net,
                    is_dyadic_pair, is_dyadic_sequence, is_progressive_pair)
from .reorder import net_to_sequence, pointset_to_sequence
from .xi import XiSeed

__all__ = [
    "BitMatrix", "BitVector", "LUDecomposition", "GeneratorPair", "Point", "PointSet", "XiSeed",
    "anti_diagonal", "identity", "pascal", "characteristic", "generate", "is_dyadic_net",
    "is_dyadic_pair", "is_dyadic_sequence", "is_progressive_pair", "net_to_sequence",
    "pointset_to_sequence", "DyadicError", "DimensionError", "SingularError",
    "NotProgressiveError", "NotDyadicError", "NotDigitalError", "InvalidSeed",
    "UnsupportedDimension", "InfeasibleSize",
]
