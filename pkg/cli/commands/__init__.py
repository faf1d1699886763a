"""
WeylCone - Subcomandos de la CLI, agrupados por familia.
"""
