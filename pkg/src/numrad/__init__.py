# 수치 반경 계산 모듈
