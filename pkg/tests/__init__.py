# Tests package for nilmult
