"""Setup file for creating the Rusm package."""

import pathlib
from setuptools import setup, find_packages

# The directory containing this file
HERE = pathlib.Path(__file__).parent

# The text of the README file
README = (HERE / "README.rst").read_text()

# This call to setup() does all the work
setup(
    name="Rusm",
    version="1.2.0",
    description="Regularized unconstrained submodular maximization: local search, Double Greedy, hardness frontiers and experiments",
    long_description=README,
    long_description_content_type="text/x-rst",
    license="MIT",
    classifiers=['License :: OSI Approved :: MIT License',
                 'Intended Audience :: Science/Research',
                 'Operating System :: OS Independent',
                 'Programming Language :: Python',
                 'Programming Language :: Python :: 3',
                 'Programming Language :: Python :: 3.8',
                 'Programming Language :: Python :: 3.9',
                 'Programming Language :: Python :: 3.10',
                 'Programming Language :: Python :: 3.11',
                 'Programming Language :: Python :: 3.12',
                 'Topic :: Scientific/Engineering :: Mathematics'
                 ],
    packages=(find_packages(include=['Rusm', 'Rusm.*'])),
    install_requires=['numpy>=1.20', 'scipy>=1.7', 'networkx>=2.6'],
    extras_require={'tests': ['pytest>=7.0', 'hypothesis>=6.0']},
    entry_points={'console_scripts': ['rusm=Rusm.Internal.Cli:cli_main']},
    python_requires='>=3.8'
)
