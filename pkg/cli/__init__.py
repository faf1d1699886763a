"""
WeylCone - Interfaz de línea de comandos.
"""
