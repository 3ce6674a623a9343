# 행렬 코퍼스 생성 및 인증 하네스 모듈
