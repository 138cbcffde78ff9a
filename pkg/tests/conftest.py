import pytest

from matoric import _kernel


def available_kernel_names():
    return sorted(_kernel.available())


@pytest.fixture(params=available_kernel_names())
def kernel_name(request):
    """Run a test once per available reduction kernel."""
    with _kernel.use_kernel(request.param):
        yield request.param


@pytest.fixture(scope="session")
def small_pool():
    from matoric.catalog import closure_instances

    return closure_instances(5)
