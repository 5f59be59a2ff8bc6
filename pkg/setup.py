import setuptools

with open("README.md", "r", encoding="utf8") as f:
    LONG_DESCRIPTION = f.read()

INSTALL_REQUIRES = [
    "numpy",
    "pandas",
    "networkx",
    "numba"]

CLASSIFIERS = [
    "Development Status :: 3 - Alpha",
    "Intended Audience :: Education",
    "Intended Audience :: Science/Research",
    "Topic :: Scientific/Engineering :: Mathematics",
    "Topic :: Education",
    "Programming Language :: Python :: 3.12",
    "Programming Language :: Python :: 3.11",
    "Programming Language :: Python :: 3.10",
    "License :: OSI Approved :: BSD License",
    "Operating System :: OS Independent",
]

setuptools.setup(
    name="oddcycletools",
    version="0.1.0",
    description="Odd Cycle Tools - count cycles, check the (n/k)^k bound "
                "for graphs without short odd cycles and search for "
                "extremal graphs",
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/markdown",
    keywords=["graph theory", "extremal graphs", "cycles",
              "odd girth", "generalized Turan number",
              "graph6", "blow-up"],
    packages=setuptools.find_packages(exclude=("tests")),
    python_requires=">=3.10",
    install_requires=INSTALL_REQUIRES,
    entry_points={"console_scripts": ["oddcycletools=oddcycletools.cli:main"]},
    license="BSD",
    classifiers=CLASSIFIERS
)
