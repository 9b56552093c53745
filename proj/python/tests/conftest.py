import os
import sys

# Under ctest the freshly built module lives in the build tree. An editable
# install registers an import hook that would otherwise win over sys.path.
_tree = os.environ.get("JACOBI_MFUN_PYTHON_DIR")
if _tree:
    sys.meta_path[:] = [f for f in sys.meta_path if type(f).__name__ != "ScikitBuildRedirectingFinder"]
    sys.path.insert(0, _tree)
