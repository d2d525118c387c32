import setuptools
from pathlib import Path

this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text()


setuptools.setup(
    name="psl2colmez",
    version="0.1.0",
    description="CM types and Colmez class functions for unitary CM fields with Galois group PSL2(F_q) x Z/2",
    license="MIT",
    packages=setuptools.find_packages(exclude=["tests"]),
    long_description=long_description,
    long_description_content_type="text/markdown",
    python_requires=">=3.10",
    install_requires=[
        "pandas",
        "numpy",
        "networkx",
        "scipy",
        "sympy",
        "fire",
        "colorama",
    ],
    extras_require={"test": ["pytest"]},
    entry_points={"console_scripts": ["psl2colmez=psl2colmez.cli:main"]},
)
