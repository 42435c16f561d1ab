# Circulant Differentiator - Hexagonal Architecture Implementation
