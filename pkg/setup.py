import setuptools

with open("README.md") as f:
    long_description = f.read()


def get_version(path):
    """Get the package's version number from the `__version__` variable in the
    package root's `__init__.py` file.
    """
    with open(path) as f:
        for line in f:
            if line.startswith("__version__"):
                delim = '"' if '"' in line else "'"
                return line.split(delim)[1]
        else:
            raise RuntimeError("Unable to find version string.")


setuptools.setup(
    name="afpmine",
    version=get_version("afpmine/__init__.py"),
    long_description=long_description,
    long_description_content_type="text/markdown",
    description="Anytime top-k approximate frequent pattern mining by branch and bound",
    packages=setuptools.find_packages(exclude=["tests"]),
    python_requires=">=3.8",
    install_requires=[
        "xarray",
        "pandas",
        "numpy",
        "scipy",
        "tqdm",
    ],
    extras_require={"test": ["pytest", "hypothesis"]},
    dependency_links=[],
    entry_points={"console_scripts": ["afpmine = afpmine.__main__:main"]},
    zip_safe=False,
)
