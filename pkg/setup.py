from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    import numpy as np
except ImportError:  # no build toolchain: the NumPy fallback is used
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "ultraturan._kernels",
                sources=["src/ultraturan/_kernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
