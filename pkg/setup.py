#!/usr/bin/env python3

from setuptools import setup

setup(
    name='egnn',
    version="0.1.0",

    packages=[
        "egnn",
        "egnn.commands",
        "egnn.commands.internal",
        "egnn.internal",
    ],

    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.17",
        "scipy>=1.4",
        "pandas>=1.1",
    ],
    extras_require={
        "plot": ["matplotlib>=3.1"],
    },

    entry_points={
        'console_scripts': ['egnn=egnn.internal.cli:main'],
    },

    author='The egnn Authors',
    description='Evolving granular neural network classifier for EEG '
    'emotion streams',
    license='Apache-2.0',
)
