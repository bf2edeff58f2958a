import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="twistkit",
    version="0.1.0",
    author="Tung Tran",
    author_email="sontungtran99@gmail.com",
    description="Drinfel'd twist, star product and Chern number verifier",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=("tests", "examples", "examples.*")),
    install_requires=[
        "numpy",
    ],
    extras_require={
        "tests": ["hypothesis"],
    },
    entry_points={
        "console_scripts": ["twistkit=twistkit.cli:main"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.10',
)
