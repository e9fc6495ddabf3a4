from setuptools import find_packages, setup

setup(
    name='tsbvp',
    version='0.1.0',
    packages=find_packages(exclude=('examples', 'examples.*', 'tests', 'tests.*', 'scripts', 'options')),
    python_requires='>=3.8',
    install_requires=[
        'basicsr>=1.4.2',
        'numpy>=1.20,<2',  # torch builds compatible with torchvision<0.17 need NumPy 1.x
        'pyyaml',
        'scipy',
        'torchvision<0.17',  # basicsr 1.4.2 imports torchvision.transforms.functional_tensor
        'tqdm',
    ],
)
