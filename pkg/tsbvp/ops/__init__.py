from .phi import PExponent, conjugate_exponent, phi, phi_inverse

__all__ = ['PExponent', 'conjugate_exponent', 'phi', 'phi_inverse']
