"""Construct and analyse the multiplicative-set topology on prime spectra of finite modules."""
