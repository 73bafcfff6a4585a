"""
SNR-adaptive irregular constellation design for convolutionally coded links
over Nakagami-m fading channels.
"""

__version__ = "0.1.0"
