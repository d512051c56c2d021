from curvature.charts import ChartForm, chart_form
from curvature.forms import (PrincipalForm, ProjectiveHessian, classify_form_type, classify_point,
                             hessian_det, homogenize_hessian, principal_form)
from curvature.identities import IdentityReport, equator_identities, identity_suite
from curvature.sphere import ExtendedForm, SpherePoint, build_F, extended_form, project, unproject

__all__ = [
    'ChartForm', 'ExtendedForm', 'IdentityReport', 'PrincipalForm', 'ProjectiveHessian',
    'SpherePoint', 'build_F', 'chart_form', 'classify_form_type', 'classify_point',
    'equator_identities', 'extended_form', 'hessian_det', 'homogenize_hessian',
    'identity_suite', 'principal_form', 'project', 'unproject',
]
