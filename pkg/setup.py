#!/usr/bin/env python
import sys
sys.path.insert(0, "./src")
from porehound import version
from setuptools import setup, find_packages
setup(
    name = "porehound",
    version = version.version_str(),
    package_dir = {'':'src'},
    packages = find_packages('src'),
    python_requires = ">=3.8",
    install_requires = [
        "numpy",
        "scipy>=1.12",
        "tomli>=1.1; python_version < '3.11'",
        "tomli-w",
    ],
    extras_require = {
        "test": ["pytest"],
    },

    entry_points = {
        'console_scripts': [
            'porehound = porehound.runners.command:main',
            'porehound-analytic = porehound.runners.analytic:main',
            'porehound-solve = porehound.runners.solve:main',
            'porehound-optimize = porehound.runners.optimize:main',
            'porehound-verify = porehound.runners.verify:main',
            'porehound-mpt-check = porehound.runners.mpt_check:main',
        ]
    },

    package_data = {
    },

    description = ("Layout optimization of two-material porous media under "+
        "Darcy, Barus and Darcy-Forchheimer drag"),
    license = "GPL 2.0",
    keywords = "porous media darcy topology optimization dissipation",
    classifiers = (
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License (GPL)",
        "Natural Language :: English",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Physics"
    ),
)
