from setuptools import setup, find_packages  # noqa: H301

version = {}
with open("./__version__.py") as fp:
    exec(fp.read(), version)

setup(
    name="lstdtools",
    version=version["__version__"],
    description="LSTD(lambda) policy evaluation with efficient leave-one-trajectory-out lambda selection",
    author="lstdtools contributors",
    license="MIT",
    keywords=["LSTD", "temporal difference", "policy evaluation", "cross-validation"],
    packages=find_packages(exclude=["tests*"]),
    install_requires=[
        "numpy>=1.20",
        "scipy>=1.6",
        "pandas>=1.5",
        "coloredlogs>=14.0",
        "tqdm>=4.52.0",
    ],
    include_package_data=True,
    package_data={"lstdtools": ["envs/config/*.json"]},
    python_requires=">=3.8",
    entry_points={
        "console_scripts": ["lstdtools=lstdtools.commands.commands:main",],
    },
)
