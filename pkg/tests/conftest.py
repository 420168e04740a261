import pytest
from hypothesis import strategies as st

from calsched import Schedule, build_instance

# A ten-job, three-color instance whose capped optimum is known exactly
# and unique up to reversal; exercised by the exhaustive oracle.
TEN_JOB_THREE_COLOR = [
    (1, 0), (2, 0), (3, 0), (4, 0),
    (1, 1), (3, 1),
    (0, 2), (2, 2), (4, 2), (5, 2),
]

THREE_COLOR_OPTIMUM = (
    "c2t0", "c2t2", "c0t2", "c0t1", "c1t1",
    "c1t3", "c0t3", "c0t4", "c2t4", "c2t5",
)


def three_color_instance():
    return build_instance([(f"c{c}t{t}", t, c) for t, c in TEN_JOB_THREE_COLOR])


@pytest.fixture
def ten_job_three_color():
    return three_color_instance()


def make_two_color(white_temps, black_temps):
    records = [(f"w{i}", t, 0) for i, t in enumerate(white_temps, 1)]
    records += [(f"b{i}", t, 1) for i, t in enumerate(black_temps, 1)]
    return build_instance(records)


@st.composite
def two_color_instances(draw, max_jobs=8, max_temp=50):
    n = draw(st.integers(min_value=2, max_value=max_jobs))
    n0 = draw(st.integers(min_value=1, max_value=n - 1))
    temps0 = draw(
        st.lists(st.integers(1, max_temp), min_size=n0, max_size=n0, unique=True)
    )
    temps1 = draw(
        st.lists(
            st.integers(1, max_temp), min_size=n - n0, max_size=n - n0, unique=True
        )
    )
    return make_two_color(temps0, temps1)


@st.composite
def random_schedules(draw, max_jobs=8, max_temp=50):
    instance = draw(two_color_instances(max_jobs=max_jobs, max_temp=max_temp))
    jobs = draw(st.permutations(list(instance.jobs)))
    return Schedule.from_jobs(instance, jobs)
