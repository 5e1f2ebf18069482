"""Design and analysis toolkit for membrane-resonator force experiments."""

__version__ = "0.1.0"
