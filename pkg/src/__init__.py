"""Coupled Gaussian sequences and fields by Fourier filtering."""
