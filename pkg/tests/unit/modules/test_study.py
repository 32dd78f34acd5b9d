from ansible_collections.numerics.quadrature.plugins.modules.study import StudyModule
from ansible_collections.numerics.quadrature.plugins.module_utils.harness import (
    ConvergenceRow)


def test_periodic_complex_study(run_module):
    results = run_module(StudyModule, example='periodic-complex', D=[1, 0],
                         N=['1:6'], precision=128)
    rows = results['rows']
    assert results['columns'] == list(ConvergenceRow.COLUMNS)
    assert len(rows) == 12
    assert [(row['D'], row['N_or_h']) for row in rows[:3]] == \
        [('0', '1'), ('0', '2'), ('0', '3')]
    assert rows[-1]['D'] == '1'
    assert rows[0]['theorem'] == 'periodic-halfplane'
    assert results['violations'] == 0
    assert set(results['slopes']) == {'0', '1'}


def test_sharpness_study(run_module):
    results = run_module(StudyModule, example='realline-sharpness', D=[2],
                         h=['1', '1/2'], precision=128)
    rows = results['rows']
    assert [row['N_or_h'] for row in rows] == ['1/2', '1']
    assert results['violations'] == 0
    assert rows[0]['theorem'] == 'realline-strip'


def test_bailey_study(run_module):
    results = run_module(StudyModule, example='realline-sharpness', D=[2],
                         h=['1'], m=2, precision=128)
    assert results['rows'][0]['theorem'] == 'bailey'
    assert results['violations'] == 0


def test_csv_written(run_module, tmp_path):
    path = tmp_path / 'study.csv'
    results = run_module(StudyModule, example='periodic-real', D=[2],
                         N=['2', '4'], precision=128, output_path=str(path))
    assert results['changed']
    lines = path.read_text().splitlines()
    assert lines[0] == ','.join(ConvergenceRow.COLUMNS)
    assert len(lines) == 3


def test_empty_range_fails(fail_module):
    failure = fail_module(StudyModule, example='periodic-real', D=[0], N=['5:1'])
    assert failure.rc == 2
    assert 'empty' in failure.msg


def test_periodic_example_needs_N(fail_module):
    failure = fail_module(StudyModule, example='periodic-real', D=[0], h=['1'])
    assert failure.rc == 2


def test_m_rejected_for_periodic(fail_module):
    failure = fail_module(StudyModule, example='periodic-real', D=[2], N=['4'], m=1)
    assert failure.rc == 2
