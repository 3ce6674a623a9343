# 수치 반경 상/하한 모듈
