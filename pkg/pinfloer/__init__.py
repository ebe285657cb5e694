"""
pinfloer: exact Pin structures, Floer gradings and grid homology over the integers.
"""
__version__ = "1.0.0"
